"""Von Neumann entropy and the quantities built from it.

All logarithms are base 2, so entropies are in bits. Relative entropy may be
``math.inf`` when the support of the first state meets the kernel of the
second.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import linalg
from .errors import DimensionMismatch, OverlappingSets, WrongRegister
from .quantum import CAB, DensityOperator, partial_trace

DIVERGENCE_TOL = 1e-10
KLEIN_TOL = 1e-9

# Subsystem names used in reports, mapped to register labels.
SUBSYSTEMS = ("A", "B", "C", "AB", "AC", "BC", "ABC")
MUTUAL_PAIRS = (("A", "B"), ("B", "C"), ("A", "C"))
CONDITIONAL_PAIRS = (("A", "B"), ("A", "C"), ("B", "C"), ("B", "A"), ("C", "A"), ("C", "B"))


def entropy_of_spectrum(eigenvalues: Iterable[float]) -> float:
    """Shannon entropy (bits) of an eigenvalue list, with ``0 log 0 = 0``."""
    w = linalg.clamp_eigenvalues(np.asarray(list(eigenvalues), dtype=float))
    w = w[w > 0]
    h = float(-np.sum(w * np.log2(w)))
    return h if h != 0 else 0.0


def von_neumann(rho: DensityOperator) -> float:
    """``S(rho) = -Tr(rho log2 rho)`` from the eigenvalues of ``rho``."""
    return entropy_of_spectrum(rho.eigenvalues())


def _labels(q) -> frozenset[str]:
    return frozenset(q)


def _check_disjoint(x: frozenset, y: frozenset) -> None:
    if x & y:
        raise OverlappingSets(f"subsystems {sorted(x)} and {sorted(y)} overlap")


def subsystem_entropy(rho: DensityOperator, qubits: Iterable[str]) -> float:
    qubits = _labels(qubits)
    if qubits == frozenset(rho.register):
        return von_neumann(rho)
    return von_neumann(partial_trace(rho, qubits))


def conditional_entropy(rho: DensityOperator, target: Iterable[str], given: Iterable[str]) -> float:
    """``S(target | given) = S(target, given) - S(given)``; negative values signal entanglement."""
    target, given = _labels(target), _labels(given)
    _check_disjoint(target, given)
    return subsystem_entropy(rho, target | given) - subsystem_entropy(rho, given)


def mutual_information(rho: DensityOperator, x: Iterable[str], y: Iterable[str]) -> float:
    """``S(x : y) = S(x) + S(y) - S(x, y)``."""
    x, y = _labels(x), _labels(y)
    _check_disjoint(x, y)
    return subsystem_entropy(rho, x) + subsystem_entropy(rho, y) - subsystem_entropy(rho, x | y)


def relative_entropy(rho: DensityOperator, sigma: DensityOperator) -> float:
    """Quantum relative entropy ``S(rho || sigma)`` in bits.

    ``sigma`` is diagonalized as ``sum_j s_j |v_j><v_j|``. If some ``s_j`` is
    numerically zero while ``<v_j|rho|v_j>`` is not, the result is
    ``math.inf``. Otherwise it is ``-S(rho) - sum_j w_j log2 s_j`` with
    ``w_j = <v_j|rho|v_j>``, and roundoff just below zero is clamped.
    """
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dimensions differ: {rho.dim} vs {sigma.dim}")
    eig = linalg.hermitian_eig(sigma.matrix)
    s = eig.eigenvalues
    v = eig.eigenvectors
    w = np.einsum("ij,ik,kj->j", v.conj(), rho.matrix, v).real
    kernel = s <= DIVERGENCE_TOL
    if np.any(kernel & (w > DIVERGENCE_TOL)):
        return math.inf
    cross = float(np.sum(w[~kernel] * np.log2(s[~kernel])))
    value = -von_neumann(rho) - cross
    if -KLEIN_TOL <= value < 0:
        value = 0.0
    return value


def _subsystem_labels(name: str) -> tuple[str, ...]:
    return tuple(name)


@dataclass(frozen=True)
class EntropyReport:
    """Marginal, joint, mutual and conditional entropies of a C-A-B state.

    ``mutual`` is keyed ``"A:B"``; ``conditional`` is keyed ``"A|B"`` meaning
    ``S(A|B)``.
    """

    S_A: float
    S_B: float
    S_C: float
    S_AB: float
    S_AC: float
    S_BC: float
    S_ABC: float
    mutual: dict[str, float] = field(default_factory=dict)
    conditional: dict[str, float] = field(default_factory=dict)

    def joint(self, name: str) -> float:
        return getattr(self, "S_" + "".join(sorted(name)))

    def as_dict(self) -> dict[str, float]:
        """Flat mapping using the keys in :data:`REPORT_KEYS`."""
        out = {f"S_{k}": getattr(self, f"S_{k}") for k in SUBSYSTEMS}
        for x, y in MUTUAL_PAIRS:
            out[f"I_{x}{y}"] = self.mutual[f"{x}:{y}"]
        for x, y in CONDITIONAL_PAIRS:
            out[f"S_{x}_given_{y}"] = self.conditional[f"{x}|{y}"]
        return out


REPORT_KEYS = (
    tuple(f"S_{k}" for k in SUBSYSTEMS)
    + tuple(f"I_{x}{y}" for x, y in MUTUAL_PAIRS)
    + tuple(f"S_{x}_given_{y}" for x, y in CONDITIONAL_PAIRS)
)


def report_from_joint_entropies(joint: dict[str, float]) -> EntropyReport:
    """Assemble a report from the seven subsystem entropies keyed like ``"AB"``."""
    j = {"".join(sorted(k)): v for k, v in joint.items()}

    def s(*names: str) -> float:
        return j["".join(sorted("".join(names)))]

    mutual = {f"{x}:{y}": s(x) + s(y) - s(x, y) for x, y in MUTUAL_PAIRS}
    conditional = {f"{x}|{y}": s(x, y) - s(y) for x, y in CONDITIONAL_PAIRS}
    return EntropyReport(
        S_A=s("A"), S_B=s("B"), S_C=s("C"),
        S_AB=s("AB"), S_AC=s("AC"), S_BC=s("BC"), S_ABC=s("ABC"),
        mutual=mutual, conditional=conditional,
    )


def full_report(rho_cab: DensityOperator) -> EntropyReport:
    """All entropy quantities of a three-qubit state on the ``C, A, B`` register."""
    if sorted(rho_cab.register) != sorted(CAB):
        raise WrongRegister(f"expected register {CAB}, got {rho_cab.register}")
    joint = {name: subsystem_entropy(rho_cab, _subsystem_labels(name)) for name in SUBSYSTEMS}
    return report_from_joint_entropies(joint)
