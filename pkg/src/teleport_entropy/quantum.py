"""Qubit registers, density operators, gates and projective measurement.

Registers are ordered tuples of string labels. The first label is the most
significant bit of a basis index, so for the register ``("C", "A", "B")`` the
basis state ``|c a b>`` sits at index ``4*c + 2*a + b``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .errors import (
    ArityMismatch,
    BadPartition,
    DimensionMismatch,
    DimensionOverflow,
    EmptyKeepSet,
    EmptyMeasureSet,
    InconsistentOutcomes,
    NotHermitian,
    NotNormalized,
    UnknownLabel,
)

CAB = ("C", "A", "B")
MAX_QUBITS = 4
NORM_TOL = 1e-6
STATE_TOL = 1e-9
ZERO_PROBABILITY = 1e-12
PURE_TOL = 1e-8
PRODUCT_TOL = 1e-8


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def _check_register(register: Sequence[str], n: int) -> tuple[str, ...]:
    register = tuple(register)
    if len(register) != n:
        raise DimensionMismatch(f"register {register} has {len(register)} labels for {n} qubits")
    if len(set(register)) != n:
        raise UnknownLabel(f"duplicate labels in register {register}")
    return register


def _n_qubits(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 1 or 1 << n != dim:
        raise DimensionMismatch(f"dimension {dim} is not a power of two")
    if n > MAX_QUBITS:
        raise DimensionOverflow(f"{n} qubits exceeds the {MAX_QUBITS}-qubit limit")
    return n


def _default_register(n: int) -> tuple[str, ...]:
    return CAB[:n] if n <= 3 else tuple(f"q{i}" for i in range(n))


def _positions(register: tuple[str, ...], labels: Iterable[str]) -> list[int]:
    out = []
    for label in labels:
        if label not in register:
            raise UnknownLabel(f"label {label!r} is not in register {register}")
        out.append(register.index(label))
    return out


@dataclass(frozen=True)
class PureState:
    """Normalized amplitude vector over a labelled qubit register."""

    amplitudes: np.ndarray
    register: tuple[str, ...]

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        n = _n_qubits(amps.size)
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise NotNormalized(f"state norm is {norm:.12g}, expected 1 within {NORM_TOL:g}")
        object.__setattr__(self, "amplitudes", _readonly(amps / norm))
        object.__setattr__(self, "register", _check_register(self.register, n))

    @classmethod
    def from_amplitudes(cls, amplitudes, register: Sequence[str] | None = None) -> "PureState":
        amps = np.asarray(amplitudes, dtype=complex).ravel()
        if register is None:
            register = _default_register(_n_qubits(amps.size))
        return cls(amps, tuple(register))

    @classmethod
    def basis(cls, bits: Sequence[int], register: Sequence[str] | None = None) -> "PureState":
        amps = np.zeros(2 ** len(bits), dtype=complex)
        amps[int("".join(str(b) for b in bits), 2) if bits else 0] = 1.0
        return cls.from_amplitudes(amps, register)

    @property
    def n(self) -> int:
        return len(self.register)


def product_state(factors: Sequence, register: Sequence[str] | None = None) -> PureState:
    """Tensor product of single- or multi-qubit amplitude vectors, in register order."""
    amps = np.ones(1, dtype=complex)
    for f in factors:
        amps = np.kron(amps, np.asarray(f, dtype=complex))
    return PureState.from_amplitudes(amps, register)


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, unit-trace operator on a labelled qubit register.

    Hermiticity and trace are checked on construction. Positivity is only
    checked by :meth:`is_valid`, which needs an eigendecomposition.
    """

    matrix: np.ndarray
    register: tuple[str, ...]

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        n = _n_qubits(m.shape[0])
        if linalg.hermiticity_error(m) > STATE_TOL:
            raise NotHermitian("density operator is not Hermitian")
        tr = np.trace(m).real
        if abs(tr - 1.0) > STATE_TOL:
            raise NotNormalized(f"density operator trace is {tr:.12g}")
        object.__setattr__(self, "matrix", _readonly(m))
        object.__setattr__(self, "register", _check_register(self.register, n))

    @classmethod
    def from_matrix(cls, matrix, register: Sequence[str] | None = None) -> "DensityOperator":
        m = np.asarray(matrix, dtype=complex)
        if register is None:
            register = _default_register(_n_qubits(m.shape[0]))
        return cls(m, tuple(register))

    @classmethod
    def maximally_mixed(cls, register: Sequence[str]) -> "DensityOperator":
        d = 2 ** len(register)
        return cls(np.eye(d) / d, tuple(register))

    @property
    def n(self) -> int:
        return len(self.register)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return linalg.clamp_eigenvalues(linalg.hermitian_eig(self.matrix).eigenvalues)

    def is_valid(self) -> bool:
        return bool(linalg.hermitian_eig(self.matrix).eigenvalues.min() >= -linalg.CLAMP_TOL)

    def reorder(self, register: Sequence[str]) -> "DensityOperator":
        """Same operator with its qubits listed in a different order."""
        register = tuple(register)
        if sorted(register) != sorted(self.register):
            raise UnknownLabel(f"{register} is not a permutation of {self.register}")
        n = self.n
        perm = _positions(self.register, register)
        t = self.matrix.reshape((2,) * (2 * n)).transpose(perm + [n + p for p in perm])
        return DensityOperator(t.reshape(self.dim, self.dim), register)


def density_from_pure(state: PureState, register: Sequence[str] | None = None) -> DensityOperator:
    """Projector ``|s><s|`` onto a pure state."""
    register = state.register if register is None else tuple(register)
    v = state.amplitudes
    return DensityOperator(np.outer(v, v.conj()), register)


@dataclass(frozen=True)
class Gate:
    name: str
    unitary: np.ndarray

    @property
    def arity(self) -> int:
        return self.unitary.shape[0].bit_length() - 1

    def inverse(self) -> "Gate":
        return Gate(f"{self.name}^-1", _readonly(self.unitary.conj().T))


H = Gate("H", _readonly(np.array([[1, 1], [1, -1]]) / np.sqrt(2)))
X = Gate("X", _readonly([[0, 1], [1, 0]]))
Y = Gate("Y", _readonly([[0, -1j], [1j, 0]]))
Z = Gate("Z", _readonly([[1, 0], [0, -1]]))
CNOT = Gate("CNOT", _readonly([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]))
GATES = {g.name: g for g in (H, X, Y, Z, CNOT)}


def apply_gate(state: PureState, gate: Gate, targets: Sequence[str]) -> PureState:
    """Apply ``gate`` to the qubits named in ``targets``.

    For two-qubit gates the first target is the control (CNOT) or the more
    significant qubit of the gate's own basis ordering.
    """
    targets = tuple(targets)
    if len(targets) != gate.arity:
        raise ArityMismatch(f"{gate.name} acts on {gate.arity} qubit(s), got targets {targets}")
    if len(set(targets)) != len(targets):
        raise ArityMismatch(f"repeated target in {targets}")
    axes = _positions(state.register, targets)
    n, k = state.n, len(targets)
    psi = state.amplitudes.reshape((2,) * n)
    u = gate.unitary.reshape((2,) * (2 * k))
    psi = np.tensordot(u, psi, axes=(list(range(k, 2 * k)), axes))
    psi = np.moveaxis(psi, list(range(k)), axes)
    return PureState(psi.reshape(-1), state.register)


def _ordered_subset(rho: DensityOperator, labels: Iterable[str], error) -> tuple[str, ...]:
    labels = set(labels)
    if not labels:
        raise error("qubit set is empty")
    _positions(rho.register, labels)
    return tuple(q for q in rho.register if q in labels)


def partial_trace(rho: DensityOperator, keep: Iterable[str]) -> DensityOperator:
    """Reduced density operator on ``keep``, listed in the original register order."""
    keep = _ordered_subset(rho, keep, EmptyKeepSet)
    n = rho.n
    t = rho.matrix.reshape((2,) * (2 * n))
    m = n
    for pos in reversed(range(n)):
        if rho.register[pos] not in keep:
            t = np.trace(t, axis1=pos, axis2=pos + m)
            m -= 1
    d = 2 ** len(keep)
    return DensityOperator(t.reshape(d, d), keep)


def purity(rho: DensityOperator) -> float:
    """``Tr(rho^2)``."""
    m = rho.matrix
    return float(np.sum(m.real**2 + m.imag**2))


@dataclass(frozen=True)
class MeasurementOutcome:
    """One branch of a computational-basis measurement.

    ``post_state`` is ``None`` when the branch has (numerically) zero
    probability; no normalization is attempted in that case.
    """

    measured: tuple[str, ...]
    bits: tuple[int, ...]
    probability: float
    post_state: DensityOperator | None
    register: tuple[str, ...]

    @property
    def is_zero(self) -> bool:
        return self.post_state is None


def _bit_columns(n: int) -> np.ndarray:
    idx = np.arange(2**n)
    return (idx[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1


def measure_computational(rho: DensityOperator, qubits: Sequence[str]) -> list[MeasurementOutcome]:
    """Projective measurement of ``qubits`` in the computational basis.

    Returns one outcome per bit assignment, in lexicographic order of the bits
    with ``qubits`` taken in the order given.
    """
    qubits = tuple(dict.fromkeys(qubits))
    if not qubits:
        raise EmptyMeasureSet("no qubits to measure")
    pos = _positions(rho.register, qubits)
    cols = _bit_columns(rho.n)[:, pos]
    outcomes = []
    for bits in itertools.product((0, 1), repeat=len(qubits)):
        mask = np.all(cols == np.array(bits), axis=1).astype(float)
        projected = rho.matrix * np.outer(mask, mask)
        p = float(np.trace(projected).real)
        post = None
        if p >= ZERO_PROBABILITY:
            post = DensityOperator(projected / p, rho.register)
        outcomes.append(MeasurementOutcome(qubits, bits, p, post, rho.register))
    return outcomes


def forget_outcomes(outcomes: Sequence[MeasurementOutcome]) -> DensityOperator:
    """Probability-weighted mixture of post-measurement states."""
    if not outcomes:
        raise InconsistentOutcomes("no outcomes given")
    register, measured = outcomes[0].register, outcomes[0].measured
    if any(o.register != register or o.measured != measured for o in outcomes):
        raise InconsistentOutcomes("outcomes come from different registers or measurements")
    if len({o.bits for o in outcomes}) != len(outcomes) or len(outcomes) != 2 ** len(measured):
        raise InconsistentOutcomes("outcomes do not form one complete measurement")
    d = 2 ** len(register)
    total = np.zeros((d, d), dtype=complex)
    weight = 0.0
    for o in outcomes:
        if o.post_state is not None:
            total += o.probability * o.post_state.matrix
            weight += o.probability
    return DensityOperator(total / weight, register)


@dataclass(frozen=True)
class Classification:
    purity_class: str  # "pure" | "mixed" | "completely_mixed"
    factorization_class: str  # "product" | "entangled"

    def short(self, factorization: bool = True) -> str:
        """Table-style label such as ``"(M,E)"``; just ``"M"`` without the factorization part."""
        p = {"pure": "P", "mixed": "M", "completely_mixed": "completely M"}[self.purity_class]
        if not factorization:
            return p
        f = {"product": "P", "entangled": "E"}[self.factorization_class]
        return f"({p},{f})"


def marginal_product(rho: DensityOperator, partition: Sequence[Sequence[str]]) -> DensityOperator:
    """Tensor product of the marginals of ``rho`` over ``partition``, in register order."""
    blocks = [tuple(b) for b in partition]
    flat = [q for b in blocks for q in b]
    if any(not b for b in blocks) or sorted(flat) != sorted(rho.register):
        raise BadPartition(f"{blocks} is not a partition of {rho.register}")
    factors = [partial_trace(rho, b) for b in blocks]
    order = tuple(q for f in factors for q in f.register)
    m = linalg.kron_all(*(f.matrix for f in factors))
    return DensityOperator(m, order).reorder(rho.register)


def classify(rho: DensityOperator, partition: Sequence[Sequence[str]] | None = None) -> Classification:
    """Pure/mixed/completely-mixed and product/entangled labels.

    The product test compares ``rho`` with the tensor product of its own
    marginals over ``partition`` (default: one block per qubit). It is a
    factorization test, not a separability test.
    """
    if partition is None:
        partition = [(q,) for q in rho.register]
    if purity(rho) >= 1.0 - PURE_TOL:
        pclass = "pure"
    elif linalg.frobenius_distance(rho.matrix, np.eye(rho.dim) / rho.dim) < PRODUCT_TOL:
        pclass = "completely_mixed"
    else:
        pclass = "mixed"
    prod = marginal_product(rho, partition)
    fclass = "product" if linalg.frobenius_distance(rho.matrix, prod.matrix) < PRODUCT_TOL else "entangled"
    return Classification(pclass, fclass)
