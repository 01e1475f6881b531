"""Three-qubit density-matrix simulator for entropy bookkeeping in single-qubit teleportation."""

from .entropy import (
    EntropyReport,
    conditional_entropy,
    full_report,
    mutual_information,
    relative_entropy,
    subsystem_entropy,
    von_neumann,
)
from .errors import TeleportEntropyError
from .inputs import STAGES, InputAmplitudes, Stage
from .linalg import EigenDecomposition, hermitian_eig, kron
from .oracle import oracle_table, oracle_value
from .pipeline import (
    StageReport,
    complete_teleportation,
    ac_entropy_scan,
    mutual_bc_compare,
    stage_report,
    stage_state,
)
from .quantum import (
    CAB,
    Classification,
    DensityOperator,
    Gate,
    PureState,
    apply_gate,
    classify,
    density_from_pure,
    forget_outcomes,
    measure_computational,
    partial_trace,
    purity,
)

__all__ = [
    "CAB",
    "STAGES",
    "Classification",
    "DensityOperator",
    "EigenDecomposition",
    "EntropyReport",
    "Gate",
    "InputAmplitudes",
    "PureState",
    "Stage",
    "StageReport",
    "TeleportEntropyError",
    "apply_gate",
    "classify",
    "complete_teleportation",
    "conditional_entropy",
    "density_from_pure",
    "ac_entropy_scan",
    "forget_outcomes",
    "full_report",
    "hermitian_eig",
    "kron",
    "measure_computational",
    "mutual_bc_compare",
    "mutual_information",
    "oracle_table",
    "oracle_value",
    "partial_trace",
    "purity",
    "relative_entropy",
    "stage_report",
    "stage_state",
    "subsystem_entropy",
    "von_neumann",
]
