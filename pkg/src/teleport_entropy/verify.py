"""Seeded property suite behind the ``verify`` command.

Each check returns its worst-case residual. A residual is the largest
violation found, so a check passes when ``worst <= tol``. Matrix-level checks
draw ``trials`` samples, entropy checks on random three-qubit states draw
``trials // 2`` states, and checks that replay the whole protocol per sample
use ``trials // 10`` random inputs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import linalg, oracle
from .entropy import relative_entropy, subsystem_entropy, von_neumann
from .inputs import STAGES, InputAmplitudes, Stage
from .pipeline import (
    complete_teleportation,
    fidelity,
    joint_ac_intermediate,
    mutual_bc_compare,
    stage_entropies,
    stage_state,
)
from .quantum import (
    CAB,
    GATES,
    PureState,
    apply_gate,
    classify,
    forget_outcomes,
    measure_computational,
    partial_trace,
    purity,
)
from .sampling import random_amplitudes, random_density, random_hermitian, random_pure_state

ORACLE_GRID = 21
NONEMPTY_SUBSETS = tuple(
    tuple(c) for k in (1, 2, 3) for c in itertools.combinations(CAB, k)
)


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    worst: float
    tol: float
    samples: int

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return f"{self.name}: {status} (worst residual {self.worst:.3e}, tol {self.tol:.0e}, n={self.samples})"


def _result(name: str, residuals, tol: float) -> PropertyResult:
    residuals = list(residuals)
    worst = max(residuals) if residuals else 0.0
    return PropertyResult(name, bool(worst <= tol), float(worst), tol, len(residuals))


def polar_grid(n: int = ORACLE_GRID, r_lo: float = 0.001, r_hi: float = 0.999) -> list[tuple[float, float]]:
    """``n x n`` grid over ``r`` in ``[r_lo, r_hi]`` and ``theta`` in ``[0, 2 pi]``, row-major."""
    return [
        (float(r), float(t))
        for r in np.linspace(r_lo, r_hi, n)
        for t in np.linspace(0.0, 2.0 * math.pi, n)
    ]


# --- linalg -----------------------------------------------------------------


def _eig_corpus(rng, trials):
    for i in range(trials):
        m = random_hermitian(rng, (2, 4, 8)[i % 3])
        yield m, linalg.hermitian_eig(m)


def check_eig(rng, trials) -> list[PropertyResult]:
    recon, ortho, trace = [], [], []
    for m, e in _eig_corpus(rng, trials):
        v = e.eigenvectors
        recon.append(linalg.frobenius_distance(e.reconstruct(), m))
        ortho.append(linalg.frobenius_distance(v.conj().T @ v, np.eye(len(v))))
        trace.append(abs(np.trace(m).real - e.eigenvalues.sum()))
    return [
        _result("eig_reconstruction", recon, 1e-9),
        _result("eig_orthonormality", ortho, 1e-9),
        _result("eig_trace", trace, 1e-9),
    ]


def check_eig_diagonal(rng, trials) -> PropertyResult:
    res = []
    for i in range(trials):
        d = rng.normal(size=(2, 4, 8)[i % 3])
        w = linalg.hermitian_eig(np.diag(d)).eigenvalues
        res.append(float(np.max(np.abs(w - np.sort(d)[::-1]))))
    return _result("eig_diagonal_exact", res, 0.0)


def check_kron(rng, trials) -> list[PropertyResult]:
    trace_res, assoc_res = [], []
    for _ in range(trials):
        da, db = rng.choice([2, 4], size=2)
        a = rng.normal(size=(da, da)) + 1j * rng.normal(size=(da, da))
        b = rng.normal(size=(db, db)) + 1j * rng.normal(size=(db, db))
        trace_res.append(abs(np.trace(linalg.kron(a, b)) - np.trace(a) * np.trace(b)))
        # dyadic rationals multiply exactly in binary floating point
        x, y, z = (rng.integers(-8, 9, size=(2, 2)) / 8.0 for _ in range(3))
        left = linalg.kron(linalg.kron(x, y), z)
        right = linalg.kron(x, linalg.kron(y, z))
        assoc_res.append(float(np.max(np.abs(left - right))))
    return [_result("kron_trace", trace_res, 1e-12), _result("kron_associativity", assoc_res, 0.0)]


# --- quantum core -----------------------------------------------------------


def check_quantum_core(rng, trials) -> list[PropertyResult]:
    trace_res, purity_res, compose_res, complete_res, unitary_res = [], [], [], [], []
    for _ in range(trials):
        rho = random_density(rng, 3, register=CAB)
        p0 = purity(rho)
        for q in NONEMPTY_SUBSETS:
            trace_res.append(abs(np.trace(partial_trace(rho, q).matrix).real - 1.0))
            outcomes = measure_computational(rho, q)
            complete_res.append(abs(sum(o.probability for o in outcomes) - 1.0))
            forgot = forget_outcomes(outcomes)
            trace_res.append(abs(np.trace(forgot.matrix).real - 1.0))
            purity_res.append(purity(forgot) - p0)
        for single, pair in (("A", "CA"), ("C", "CB"), ("B", "AB")):
            direct = partial_trace(rho, single)
            nested = partial_trace(partial_trace(rho, pair), single)
            compose_res.append(linalg.frobenius_distance(direct.matrix, nested.matrix))
        psi = random_pure_state(rng, 3, CAB)
        for gate in GATES.values():
            targets = list(rng.permutation(CAB)[: gate.arity])
            out = apply_gate(apply_gate(psi, gate, targets), gate.inverse(), targets)
            unitary_res.append(float(np.max(np.abs(out.amplitudes - psi.amplitudes))))
            trace_res.append(abs(np.linalg.norm(apply_gate(psi, gate, targets).amplitudes) - 1.0))
    return [
        _result("trace_preservation", trace_res, 1e-9),
        _result("purity_non_increase", purity_res, 1e-9),
        _result("partial_trace_composition", compose_res, 1e-12),
        _result("gate_unitarity", unitary_res, 1e-12),
        _result("measurement_completeness", complete_res, 1e-9),
    ]


# --- entropy ----------------------------------------------------------------


def check_klein(rng, trials) -> PropertyResult:
    res = []
    for i in range(trials):
        n = 1 + i % 2
        rho = random_density(rng, n)
        # every fourth sigma is rank-deficient so the divergent branch is exercised
        sigma = random_density(rng, n, rank=1 if i % 4 == 3 else None)
        value = relative_entropy(rho, sigma)
        res.append(0.0 if math.isinf(value) else -value)
    return _result("klein_inequality", res, 1e-9)


def _bipartitions(register):
    labels = tuple(register)
    for k in range(1, len(labels) + 1):
        for xy in itertools.combinations(labels, k):
            for j in range(1, len(xy)):
                for x in itertools.combinations(xy, j):
                    y = tuple(q for q in xy if q not in x)
                    if x < y:
                        yield x, y


def _state_trials(trials: int) -> int:
    """Random-state checks draw half as many samples as there are trials."""
    return max(1, trials // 2)


def check_entropy_inequalities(rng, trials) -> list[PropertyResult]:
    sub, al = [], []
    for i in range(_state_trials(trials)):
        n = 2 + i % 2
        rho = random_density(rng, n)
        cache = {}

        def s(q):
            key = frozenset(q)
            if key not in cache:
                cache[key] = subsystem_entropy(rho, q)
            return cache[key]

        for x, y in _bipartitions(rho.register):
            sxy = s(x + y)
            sub.append(sxy - s(x) - s(y))
            al.append(abs(s(x) - s(y)) - sxy)
    return [_result("subadditivity", sub, 1e-9), _result("araki_lieb", al, 1e-9)]


def check_pure_symmetry(rng, trials) -> PropertyResult:
    res = []
    for _ in range(_state_trials(trials)):
        rho = random_density(rng, 3, rank=1, register=CAB)
        # each single qubit against its complementary pair covers every split
        for q in NONEMPTY_SUBSETS[:3]:
            rest = tuple(x for x in CAB if x not in q)
            res.append(abs(subsystem_entropy(rho, q) - subsystem_entropy(rho, rest)))
    return _result("pure_state_symmetry", res, 1e-9)


def check_measurement_monotonicity(rng, trials) -> PropertyResult:
    res = []
    for _ in range(_state_trials(trials)):
        rho = random_density(rng, 3, register=CAB)
        s0 = von_neumann(rho)
        for q in NONEMPTY_SUBSETS:
            res.append(s0 - von_neumann(forget_outcomes(measure_computational(rho, q))))
    return _result("measurement_monotonicity", res, 1e-9)


def check_negative_conditional_entangled(rng, trials) -> PropertyResult:
    """Count pure joint states with a negative conditional entropy but a product label."""
    violations = []
    pure_stages = (Stage.S1, Stage.S2, Stage.S3, Stage.S4)
    for _ in range(trials // 10 or 1):
        amps = random_amplitudes(rng)
        for stage in pure_stages:
            rho = stage_state(amps, stage)
            for joint in [CAB] + [p for p in NONEMPTY_SUBSETS if len(p) == 2]:
                sub = rho if joint == CAB else partial_trace(rho, joint)
                if purity(sub) < 1.0 - 1e-8:
                    continue
                for x, y in _bipartitions(joint):
                    if set(x) | set(y) != set(joint):
                        continue
                    cond = subsystem_entropy(sub, x + y) - subsystem_entropy(sub, y)
                    if cond < -1e-9 and classify(sub, [x, y]).factorization_class != "entangled":
                        violations.append(1.0)
                    else:
                        violations.append(0.0)
    return _result("negative_conditional_implies_entangled", violations, 0.0)


# --- pipeline ---------------------------------------------------------------


def check_oracle_equivalence(rng, trials) -> PropertyResult:
    res = []
    for r, t in polar_grid():
        amps = InputAmplitudes.from_polar(r, t)
        for stage in STAGES:
            got = stage_entropies(amps, stage).as_dict()
            for key in oracle.ENTROPY_KEYS:
                res.append(abs(got[key] - oracle.oracle_value(amps, stage, key)))
    return _result("oracle_equivalence", res, 1e-9)


def check_stage_transitions(rng, trials) -> list[PropertyResult]:
    joint_res, mutual_res, marginal_res = [], [], []
    for _ in range(trials // 10 or 1):
        amps = random_amplitudes(rng)
        reports = {s: stage_entropies(amps, s) for s in STAGES}
        s4, s5 = reports[Stage.S4], reports[Stage.S5]
        joint_res += [getattr(s4, k) - getattr(s5, k) for k in ("S_ABC", "S_AB", "S_AC", "S_BC")]
        mutual_res += [s5.mutual[k] - s4.mutual[k] for k in ("A:B", "A:C", "B:C")]
        for stage, rep in reports.items():
            if stage is not Stage.S1:
                marginal_res += [abs(rep.S_A - 1.0), abs(rep.S_B - 1.0)]
    return [
        _result("joint_entropy_increase_4_to_5", joint_res, 1e-9),
        _result("mutual_information_decrease_4_to_5", mutual_res, 1e-9),
        _result("marginal_entropy_one", marginal_res, 1e-9),
    ]


def check_ac_crossover(rng, trials) -> list[PropertyResult]:
    margins = []
    for r, sign in ((0.05, 1.0), (0.95, 1.0), (1.0 / math.sqrt(2.0), -1.0)):
        s451, s452 = joint_ac_intermediate(InputAmplitudes.from_polar(r, 0.0))
        # positive when the expected ordering is violated
        margins.append(-sign * (s451 - s452))
    worst = max(margins)
    s451, s452 = joint_ac_intermediate(InputAmplitudes.from_polar(1.0, 0.0))
    return [
        PropertyResult("ac_crossover", worst < 0.0, worst, 0.0, len(margins)),
        _result("ac_u0_endpoint", [abs(s451 - 2.0), abs(s452 - 1.0)], 1e-9),
    ]


def check_mutual_bc_ordering(rng, trials) -> PropertyResult:
    res = []
    points = polar_grid() + [(float(rng.uniform()), float(rng.uniform(0, 2 * math.pi))) for _ in range(trials)]
    for r, t in points:
        stage4, stage5 = mutual_bc_compare(InputAmplitudes.from_polar(r, t))
        res.append(stage5 - stage4)
    return _result("mutual_bc_stage4_ge_stage5", res, 1e-9)


def check_teleportation(rng, trials) -> PropertyResult:
    res = []
    for _ in range(trials // 10 or 1):
        amps = random_amplitudes(rng)
        psi = PureState.from_amplitudes(amps.vector, ("B",))
        for m1, m2 in itertools.product((0, 1), repeat=2):
            res.append(abs(1.0 - fidelity(psi, complete_teleportation(amps, m1, m2))))
    return _result("teleportation_fidelity", res, 1e-9)


def check_csv_round_trip(rng, trials) -> PropertyResult:
    res = []
    for _ in range(trials):
        x = float(rng.uniform(-2.0, 3.0))
        res.append(abs(float(f"{x:.12g}") - x))
    return _result("csv_round_trip", res, 1e-11)


CHECKS: tuple[Callable, ...] = (
    check_eig,
    check_eig_diagonal,
    check_kron,
    check_quantum_core,
    check_klein,
    check_entropy_inequalities,
    check_pure_symmetry,
    check_measurement_monotonicity,
    check_negative_conditional_entangled,
    check_oracle_equivalence,
    check_stage_transitions,
    check_ac_crossover,
    check_mutual_bc_ordering,
    check_teleportation,
    check_csv_round_trip,
)


def run_suite(seed: int, trials: int) -> list[PropertyResult]:
    """Run every property check; each check draws from its own seeded stream."""
    if trials < 1:
        raise ValueError("trials must be positive")
    results: list[PropertyResult] = []
    for index, check in enumerate(CHECKS):
        rng = np.random.default_rng([seed, index])
        out = check(rng, trials)
        results.extend(out if isinstance(out, list) else [out])
    return results
