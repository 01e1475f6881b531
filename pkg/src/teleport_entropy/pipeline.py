"""The single-qubit teleportation circuit, replayed stage by stage.

Circuit on the register ``C, A, B`` (C holds the input, A is Alice's half and
B is Bob's half of the shared pair):

* stage 1: ``|psi>_C (H|0>)_A |0>_B``
* stage 2: after CNOT with control A and target B
* stage 3: after CNOT with control C and target A
* stage 4: after H on C
* stage 4.5-1 / 4.5-2: only C / only A measured, outcome discarded
* stage 5: C and A both measured, outcome discarded
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import oracle
from .entropy import EntropyReport, relative_entropy, report_from_joint_entropies, von_neumann
from .inputs import STAGES, InputAmplitudes, Stage
from .linalg import hermitian_eig
from .quantum import (
    CAB,
    CNOT,
    H,
    X,
    Z,
    Classification,
    DensityOperator,
    PureState,
    apply_gate,
    classify,
    density_from_pure,
    forget_outcomes,
    measure_computational,
    partial_trace,
    product_state,
)

KET0 = np.array([1.0, 0.0])

# Which qubits are measured (and forgotten) to reach each post-measurement stage.
MEASURED = {Stage.S45_1: ("C",), Stage.S45_2: ("A",), Stage.S5: ("C", "A")}

MARGINALS = ("CAB", "CA", "CB", "AB", "C", "A", "B")
RELATIVE_PAIRS = (("C", "A"), ("A", "C"), ("C", "B"), ("B", "C"), ("A", "B"), ("B", "A"))


def input_state(amps: InputAmplitudes) -> PureState:
    """``|psi>_C |0>_A |0>_B``, before the first Hadamard."""
    return product_state([amps.vector, KET0, KET0], CAB)


def pure_stages(amps: InputAmplitudes) -> dict[Stage, PureState]:
    """State vectors at stages 1 to 4."""
    s1 = apply_gate(input_state(amps), H, ["A"])
    s2 = apply_gate(s1, CNOT, ["A", "B"])
    s3 = apply_gate(s2, CNOT, ["C", "A"])
    s4 = apply_gate(s3, H, ["C"])
    return {Stage.S1: s1, Stage.S2: s2, Stage.S3: s3, Stage.S4: s4}


def stage_state(amps: InputAmplitudes, stage: Stage) -> DensityOperator:
    """Density operator of the full C-A-B register at ``stage``."""
    stage = Stage.parse(stage) if not isinstance(stage, Stage) else stage
    vectors = pure_stages(amps)
    if stage in vectors:
        return density_from_pure(vectors[stage])
    rho4 = density_from_pure(vectors[Stage.S4])
    return forget_outcomes(measure_computational(rho4, MEASURED[stage]))


def _marginals(rho: DensityOperator) -> dict[str, DensityOperator]:
    out = {"CAB": rho}
    for name in MARGINALS[1:]:
        out[name] = partial_trace(rho, tuple(name))
    return out


@dataclass(frozen=True)
class StageReport:
    """Entropies, relative entropies and state classifications at one stage.

    ``relative_entropies`` is keyed ``"rel_X_Y"`` for ``S(rho^X || rho^Y)``.
    ``classifications`` is keyed by marginal name (``"CAB"``, ``"CA"``, ...).
    """

    stage: Stage
    amplitudes: InputAmplitudes
    entropies: EntropyReport
    relative_entropies: dict[str, float]
    classifications: dict[str, Classification]

    @property
    def divergent(self) -> tuple[str, ...]:
        return tuple(k for k, v in self.relative_entropies.items() if math.isinf(v))


def _entropies(marg: dict[str, DensityOperator]) -> EntropyReport:
    return report_from_joint_entropies({"".join(sorted(name)): von_neumann(m) for name, m in marg.items()})


def stage_entropies(amps: InputAmplitudes, stage: Stage) -> EntropyReport:
    """Just the entropy part of :func:`stage_report`."""
    return _entropies(_marginals(stage_state(amps, stage)))


def stage_report(amps: InputAmplitudes, stage: Stage) -> StageReport:
    stage = Stage.parse(stage) if not isinstance(stage, Stage) else stage
    marg = _marginals(stage_state(amps, stage))
    entropies = _entropies(marg)
    relative = {f"rel_{x}_{y}": relative_entropy(marg[x], marg[y]) for x, y in RELATIVE_PAIRS}
    classes = {name: classify(m) for name, m in marg.items()}
    return StageReport(stage, amps, entropies, relative, classes)


def all_stage_reports(amps: InputAmplitudes) -> list[StageReport]:
    return [stage_report(amps, s) for s in STAGES]


def fidelity(psi: PureState, phi: PureState) -> float:
    """``|<psi|phi>|^2``; global phase is ignored."""
    return float(abs(np.vdot(psi.amplitudes, phi.amplitudes)) ** 2)


def bob_state_before_correction(amps: InputAmplitudes, m1: int, m2: int) -> PureState:
    """Bob's qubit after Alice reads ``C = m1``, ``A = m2`` from the stage-4 state."""
    rho4 = stage_state(amps, Stage.S4)
    outcome = next(o for o in measure_computational(rho4, ("C", "A")) if o.bits == (m1, m2))
    if outcome.post_state is None:
        raise ValueError(f"outcome {(m1, m2)} has zero probability")
    bob = partial_trace(outcome.post_state, ["B"])
    # rank one, so the leading eigenvector is the state up to a global phase
    vec = hermitian_eig(bob.matrix).eigenvectors[:, 0]
    return PureState.from_amplitudes(vec, ("B",))


def complete_teleportation(amps: InputAmplitudes, m1: int, m2: int) -> PureState:
    """Bob's qubit after applying ``X^m2`` and then ``Z^m1``."""
    state = bob_state_before_correction(amps, m1, m2)
    if m2:
        state = apply_gate(state, X, ["B"])
    if m1:
        state = apply_gate(state, Z, ["B"])
    return state


def mutual_bc_compare(amps: InputAmplitudes) -> tuple[float, float]:
    """``S(B:C)`` at stage 4 and stage 5 from their closed forms in ``r`` and ``u``."""
    r2 = amps.r**2
    stage4 = -oracle.xlog2x(r2) - oracle.xlog2x(1.0 - r2)
    return stage4, oracle.coherence_term(amps.u)


class ScanRow(NamedTuple):
    r: float
    theta: float
    s_ac_451: float
    s_ac_452: float


def joint_ac_intermediate(amps: InputAmplitudes) -> tuple[float, float]:
    """Simulated ``S(A,C)`` at stages 4.5-1 and 4.5-2."""
    rho4 = density_from_pure(pure_stages(amps)[Stage.S4])
    out = []
    for stage in (Stage.S45_1, Stage.S45_2):
        rho = forget_outcomes(measure_computational(rho4, MEASURED[stage]))
        out.append(von_neumann(partial_trace(rho, ("C", "A"))))
    return out[0], out[1]


def ac_entropy_scan(r_steps: int, theta_steps: int) -> list[ScanRow]:
    """``S(A,C)`` at both intermediate stages over a uniform ``(r, theta)`` grid.

    ``r`` runs over ``[0, 1]`` and ``theta`` over ``[0, 2 pi]`` with both
    endpoints included. Rows come out with ``r`` varying slowest.
    """
    if r_steps < 2 or theta_steps < 2:
        raise ValueError("r_steps and theta_steps must both be at least 2")
    rows = []
    for r in np.linspace(0.0, 1.0, r_steps):
        for theta in np.linspace(0.0, 2.0 * math.pi, theta_steps):
            s451, s452 = joint_ac_intermediate(InputAmplitudes.from_polar(float(r), float(theta)))
            rows.append(ScanRow(float(r), float(theta), s451, s452))
    return rows
