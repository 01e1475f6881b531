import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from teleport_entropy import oracle
from teleport_entropy.errors import NotNormalized, UnknownStage
from teleport_entropy.inputs import STAGES, InputAmplitudes, Stage
from teleport_entropy.pipeline import (
    bob_state_before_correction,
    complete_teleportation,
    fidelity,
    ac_entropy_scan,
    joint_ac_intermediate,
    mutual_bc_compare,
    pure_stages,
    stage_entropies,
    stage_report,
    stage_state,
)
from teleport_entropy.quantum import PureState, measure_computational, partial_trace

AMPS = InputAmplitudes.from_polar(0.6, 0.7)


def _ket(*terms):
    """Sum of ``coef * |bits>`` over a three-qubit register."""
    v = np.zeros(8, dtype=complex)
    for coef, bits in terms:
        v[int(bits, 2)] += coef
    return v


def _expected_vectors(a, b):
    s = 1 / math.sqrt(2)
    return {
        Stage.S1: s * _ket((a, "000"), (a, "010"), (b, "100"), (b, "110")),
        Stage.S2: s * _ket((a, "000"), (a, "011"), (b, "100"), (b, "111")),
        Stage.S3: s * _ket((a, "000"), (a, "011"), (b, "101"), (b, "110")),
        Stage.S4: 0.5 * _ket(
            (a, "000"), (a, "011"), (a, "100"), (a, "111"),
            (b, "001"), (b, "010"), (-b, "101"), (-b, "110"),
        ),
    }


@pytest.mark.parametrize("amps", [AMPS, InputAmplitudes(1, 0), InputAmplitudes(0.6, 0.8j)])
def test_stage_vectors(amps):
    got = pure_stages(amps)
    for stage, vec in _expected_vectors(amps.a, amps.b).items():
        np.testing.assert_allclose(got[stage].amplitudes, vec, atol=1e-15)


def test_stage3_reduced_states():
    a, b = AMPS.a, AMPS.b
    rho = stage_state(AMPS, Stage.S3)
    ab, a2, b2 = a * np.conj(b), abs(a) ** 2, abs(b) ** 2
    ca = 0.5 * np.array([[a2, 0, 0, ab], [0, a2, ab, 0], [0, np.conj(ab), b2, 0], [np.conj(ab), 0, 0, b2]])
    np.testing.assert_allclose(partial_trace(rho, "CA").matrix, ca, atol=1e-15)
    np.testing.assert_allclose(partial_trace(rho, "CB").matrix, ca, atol=1e-15)
    abm = 0.5 * np.array([[a2, 0, 0, a2], [0, b2, b2, 0], [0, b2, b2, 0], [a2, 0, 0, a2]])
    np.testing.assert_allclose(partial_trace(rho, "AB").matrix, abm, atol=1e-15)
    np.testing.assert_allclose(partial_trace(rho, "C").matrix, np.diag([a2, b2]), atol=1e-15)
    np.testing.assert_allclose(partial_trace(rho, "A").matrix, np.eye(2) / 2, atol=1e-15)


def test_stage4_input_qubit_state():
    d = AMPS.p0 - AMPS.p1
    expected = 0.5 * np.array([[1, d], [d, 1]])
    np.testing.assert_allclose(partial_trace(stage_state(AMPS, Stage.S4), "C").matrix, expected, atol=1e-15)


def test_stage5_reduced_states():
    rho = stage_state(AMPS, Stage.S5)
    u, a2, b2 = AMPS.u, AMPS.p0, AMPS.p1
    np.testing.assert_allclose(partial_trace(rho, "CA").matrix, np.eye(4) / 4, atol=1e-15)
    cb = 0.25 * np.array([[1, u, 0, 0], [u, 1, 0, 0], [0, 0, 1, -u], [0, 0, -u, 1]])
    np.testing.assert_allclose(partial_trace(rho, "CB").matrix, cb, atol=1e-15)
    np.testing.assert_allclose(partial_trace(rho, "AB").matrix, 0.5 * np.diag([a2, b2, b2, a2]), atol=1e-15)
    for q in "CAB":
        np.testing.assert_allclose(partial_trace(rho, q).matrix, np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(np.linalg.eigvalsh(rho.matrix)[::-1], [0.25] * 4 + [0] * 4, atol=1e-12)


def _bob_matrix(a, b, m1, m2):
    """Bob's conditional state for outcome ``C = m1, A = m2`` in closed form."""
    vec = {(0, 0): (a, b), (0, 1): (b, a), (1, 0): (a, -b), (1, 1): (-b, a)}[(m1, m2)]
    v = np.array(vec)
    return np.outer(v, v.conj())


def test_stage4_measurement_table():
    rho4 = stage_state(AMPS, Stage.S4)
    for o in measure_computational(rho4, ("C", "A")):
        assert o.probability == pytest.approx(0.25, abs=1e-12)
        k = 2 * o.bits[0] + o.bits[1]
        ca = np.zeros((4, 4))
        ca[k, k] = 1.0
        expected = np.kron(ca, _bob_matrix(AMPS.a, AMPS.b, *o.bits))
        np.testing.assert_allclose(o.post_state.matrix, expected, atol=1e-12)


@pytest.mark.parametrize("m1, m2", list(itertools.product((0, 1), repeat=2)))
def test_teleportation_recovers_input(m1, m2):
    psi = PureState.from_amplitudes(AMPS.vector, ("B",))
    before = bob_state_before_correction(AMPS, m1, m2)
    np.testing.assert_allclose(
        np.outer(before.amplitudes, before.amplitudes.conj()), _bob_matrix(AMPS.a, AMPS.b, m1, m2), atol=1e-12
    )
    assert fidelity(psi, complete_teleportation(AMPS, m1, m2)) == pytest.approx(1.0, abs=1e-12)


@given(st.floats(0.0, 1.0), st.floats(0.0, 2 * math.pi))
def test_pipeline_matches_closed_forms(r, theta):
    amps = InputAmplitudes.from_polar(r, theta)
    for stage in STAGES:
        got = stage_entropies(amps, stage).as_dict()
        for key, value in oracle.oracle_table(amps, stage).items():
            if key in got:
                assert got[key] == pytest.approx(value, abs=1e-9), (stage, key)


@pytest.mark.parametrize("stage", [Stage.S1, Stage.S2, Stage.S3, Stage.S4, Stage.S5])
@pytest.mark.parametrize("r, theta", [(0.6, 0.7), (0.3, 2.0), (1.0, 0.0), (0.0, 0.0), (1 / math.sqrt(2), 0.0)])
def test_relative_entropies_match_closed_forms(stage, r, theta):
    amps = InputAmplitudes.from_polar(r, theta)
    got = stage_report(amps, stage).relative_entropies
    for key, value in oracle.oracle_table(amps, stage).items():
        if key.startswith("rel_"):
            if math.isinf(value):
                assert got[key] == math.inf, key
            else:
                assert got[key] == pytest.approx(value, abs=1e-9), key


def test_stage_report_flags_divergences():
    rep = stage_report(AMPS, "1")
    assert set(rep.divergent) == {"rel_C_A", "rel_A_C", "rel_C_B", "rel_B_C", "rel_A_B", "rel_B_A"}
    assert stage_report(AMPS, Stage.S5).divergent == ()


def test_mutual_bc_compare_frozen_values():
    assert mutual_bc_compare(InputAmplitudes.from_polar(1 / math.sqrt(2), math.pi / 2)) == pytest.approx((1.0, 0.0))
    assert mutual_bc_compare(InputAmplitudes.from_polar(0.0, 1.0)) == pytest.approx((0.0, 0.0))
    assert mutual_bc_compare(InputAmplitudes.from_polar(1 / math.sqrt(2), 0.0)) == pytest.approx((1.0, 1.0))


def test_joint_ac_intermediate_values():
    assert joint_ac_intermediate(InputAmplitudes.from_polar(1.0, 0.0)) == pytest.approx((2.0, 1.0), abs=1e-12)
    assert joint_ac_intermediate(InputAmplitudes.from_polar(1 / math.sqrt(2), 0.0)) == pytest.approx(
        (1.0, 2.0), abs=1e-12
    )


def test_ac_entropy_scan_layout():
    rows = ac_entropy_scan(3, 4)
    assert len(rows) == 12
    assert [row.r for row in rows[:4]] == [0.0] * 4
    assert rows[3].theta == pytest.approx(2 * math.pi)
    for r_index in range(3):
        first, last = rows[4 * r_index], rows[4 * r_index + 3]
        assert (first.s_ac_451, first.s_ac_452) == pytest.approx((last.s_ac_451, last.s_ac_452), abs=1e-12)
    # r = 0 and r = 1 both give u = 0 and a vanishing Shannon term
    for k in range(4):
        assert rows[k][2:] == pytest.approx(rows[8 + k][2:], abs=1e-12)
    with pytest.raises(ValueError):
        ac_entropy_scan(1, 4)


def test_input_amplitudes():
    amps = InputAmplitudes.from_polar(0.6, 0.7)
    assert amps.r == pytest.approx(0.6)
    assert amps.theta == pytest.approx(0.7)
    assert amps.u == pytest.approx(2 * 0.6 * 0.8 * math.cos(0.7))
    assert InputAmplitudes(1.0 + 1e-7, 0).p0 == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(NotNormalized):
        InputAmplitudes(1, 1)
    with pytest.raises(NotNormalized):
        InputAmplitudes.from_polar(1.5, 0)


def test_stage_parse():
    assert Stage.parse("4.5-1") is Stage.S45_1
    assert Stage.parse("S5") is Stage.S5
    with pytest.raises(UnknownStage):
        Stage.parse("6")
