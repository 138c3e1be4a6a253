"""Test closed-form tradeoff relations."""

import logging
import math
import numpy as np
import pytest
from hypothesis import given, strategies as st

from qrevsim.Errors import InvalidParameter
from qrevsim.analysis import tradeoff_point, optimal_eta, golden_section_eta, k_factor, multi_observer_curve, \
    optimal_eta_with_observers, reversibility, binary_entropy, mutual_information, joint_distribution, \
    mutual_information_from_joint, fidelity_from_p_error, observer_reliability, max_observers, FINE_MIN, \
    TradeoffPoint

unit_c0 = st.floats(min_value=1e-6, max_value=0.999)
strength = st.floats(min_value=0.0, max_value=1.0)


def test_reference_point(c0):
    point = tradeoff_point(c0, 0.5)
    assert point.c == pytest.approx(math.exp(-1.0), rel=1e-14)
    assert point.p_error == pytest.approx(0.0350632525, abs=1e-10)
    assert point.fidelity == pytest.approx(0.6839397206, abs=1e-10)
    assert point.d_rel == pytest.approx(0.9298734950, abs=1e-10)
    assert point.d_rev == pytest.approx(math.exp(-1.0))
    assert point.fine_expectation == pytest.approx(1.0 - point.fidelity + point.p_error, abs=1e-15)


def test_no_measurement_point(c0):
    point = tradeoff_point(c0, 0.0)
    assert (point.p_error, point.fidelity, point.d_rel, point.theta) == (0.5, 1.0, 0.0, 0.0)


@given(unit_c0, strength)
def test_points_lie_on_the_circle(base, eta):
    point = tradeoff_point(base, eta)
    assert abs(point.circle_residual) < 1e-12
    assert math.sin(point.theta) == pytest.approx(point.d_rel, abs=1e-12)
    assert math.cos(point.theta) == pytest.approx(point.d_rev, abs=1e-12)


@pytest.mark.parametrize("base", [math.exp(-0.5), math.exp(-2.0), math.exp(-8.0)])
def test_error_probability_falls_with_strength(base):
    p_errors = [tradeoff_point(base, eta).p_error for eta in np.linspace(0.0, 1.0, 101)]
    assert p_errors[0] == 0.5
    assert all(later <= earlier for earlier, later in zip(p_errors, p_errors[1:]))


def test_tradeoff_does_not_depend_on_initial_overlap():
    weak, strong = math.exp(-1.0), math.exp(-2.0)
    for eta in np.linspace(0.0, 1.0, 21):
        point = tradeoff_point(weak, eta)
        twin = tradeoff_point(strong, eta / 2.0)
        assert twin.d_rel == pytest.approx(point.d_rel, abs=1e-12)
        assert twin.d_rev == pytest.approx(point.d_rev, abs=1e-12)
        for each in (point, twin):
            assert each.d_rev == pytest.approx(math.sqrt(1.0 - each.d_rel ** 2), abs=1e-12)


def test_row_format(c0):
    point = tradeoff_point(c0, 0.25)
    assert len(str(point).split(',')) == len(TradeoffPoint.header().split(','))


def test_optimal_strength(c0):
    eta, fine, clamped = optimal_eta(c0)
    assert eta == pytest.approx(0.173286795140, abs=1e-12)
    assert fine == pytest.approx(1.0 - math.sqrt(2.0) / 2.0, abs=1e-12)
    assert not clamped
    assert tradeoff_point(c0, eta).theta == pytest.approx(math.pi / 4.0, abs=1e-12)
    assert golden_section_eta(c0) == pytest.approx(eta, abs=1e-9)


def test_optimal_strength_clamped():
    eta, fine, clamped = optimal_eta(0.8)
    assert (eta, clamped) == (1.0, True)
    assert fine == pytest.approx(0.3, abs=1e-12)
    assert fine > FINE_MIN
    assert golden_section_eta(0.8) == 1.0


@given(st.floats(min_value=1e-4, max_value=0.7))
def test_numerical_optimum_matches_closed_form(base):
    assert golden_section_eta(base) == pytest.approx(optimal_eta(base)[0], abs=1e-5)


@pytest.mark.parametrize("c0", [0.0, 1.0, -0.5, 1.5])
def test_invalid_overlap(c0):
    with pytest.raises(InvalidParameter):
        optimal_eta(c0)


def test_k_tradeoff_identity(c0):
    k = k_factor(c0, 0.5)
    assert k == pytest.approx(math.exp(2.0), rel=1e-14)
    for d_rel, d_rev, fine in multi_observer_curve(c0, 0.5, np.linspace(0.0, 0.5, 51)):
        assert k * d_rev ** 2 + d_rel ** 2 == pytest.approx(1.0, abs=1e-12)
        assert fine == pytest.approx(1.0 - 0.5 * (d_rel + d_rev), abs=1e-15)


def test_multi_observer_limit(c0):
    (d_rel, d_rev, _), = multi_observer_curve(c0, 0.5, [0.5])
    assert d_rev == pytest.approx(math.exp(-2.0), rel=1e-14)
    assert d_rel == pytest.approx(0.9298734950, abs=1e-10)
    with pytest.raises(InvalidParameter):
        multi_observer_curve(c0, 0.5, [0.6])


def test_optimal_strength_with_observers(c0):
    eta, fine, clamped = optimal_eta_with_observers(c0, 0.2)
    assert eta == pytest.approx(0.2927751665, abs=1e-9)
    assert not clamped
    neighbours = multi_observer_curve(c0, 0.2, [eta - 0.01, eta + 0.01])
    assert all(fine < other for _, _, other in neighbours)
    assert optimal_eta_with_observers(c0, 0.0)[0] == pytest.approx(optimal_eta(c0)[0], abs=1e-12)


def test_observers_never_lower_the_fine(c0):
    results = [optimal_eta_with_observers(c0, eta_tilde) for eta_tilde in (0.0, 0.1, 0.2, 0.4)]
    assert results[0][1] == pytest.approx(FINE_MIN, abs=1e-12)
    for (eta, fine, _), (later_eta, later_fine, _) in zip(results, results[1:]):
        assert later_fine >= fine
        assert later_eta > eta
    assert not any(clamped for _, _, clamped in results)


def test_optimal_strength_with_observers_clamped():
    eta, _, clamped = optimal_eta_with_observers(math.exp(-2.0), 0.95)
    assert clamped
    assert eta == pytest.approx(0.05)


def test_reversibility(c0):
    assert reversibility(c0, 0.5) == pytest.approx(math.exp(-1.0))
    assert reversibility(c0, 0.25, 0.5) == pytest.approx(c0 ** 0.75)
    exponent = 0.5 + (math.sqrt(0.5) - math.sqrt(0.7)) ** 2
    assert reversibility(c0, 0.3, 0.2, knows_total_tap=False) == pytest.approx(c0 ** exponent)
    assert reversibility(c0, 0.3, 0.0, knows_total_tap=False) == pytest.approx(reversibility(c0, 0.3))
    with pytest.raises(InvalidParameter):
        reversibility(c0, 0.8, 0.3)


def test_entropy():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.5) == pytest.approx(1.0)
    with pytest.raises(InvalidParameter):
        binary_entropy(1.5)


def test_mutual_information_at_optimum():
    p = (1.0 - math.sqrt(0.5)) / 2.0
    assert p == pytest.approx(0.1464466094, abs=1e-10)
    assert mutual_information(p) == pytest.approx(0.3991239633, abs=1e-10)
    assert mutual_information_from_joint(joint_distribution(p)) == pytest.approx(mutual_information(p), abs=1e-12)


@given(st.floats(min_value=0.0, max_value=0.5))
def test_mutual_information_from_joint(p):
    joint = joint_distribution(p)
    assert joint.sum() == pytest.approx(1.0, abs=1e-15)
    assert mutual_information_from_joint(joint) == pytest.approx(mutual_information(p), abs=1e-12)


def test_invalid_joint_distribution():
    with pytest.raises(InvalidParameter):
        mutual_information_from_joint([[0.5, 0.5], [0.5, 0.5]])


def test_fidelity_from_error_probability(c0):
    point = tradeoff_point(c0, 0.5)
    assert fidelity_from_p_error(point.p_error) == pytest.approx(point.fidelity, abs=1e-12)
    assert fidelity_from_p_error(0.5) == 1.0
    assert fidelity_from_p_error(0.0) == 0.5


def test_observer_reliability(c0):
    assert observer_reliability(c0, 0.5) == pytest.approx(0.9298734950, abs=1e-10)
    assert observer_reliability(c0, 0.0) == 0.0


def test_observer_bound():
    m_p, m_exact = max_observers(math.exp(-50.0), 0.01)
    assert m_p == pytest.approx(31.066747, abs=1e-6)
    assert m_exact == 30
    assert abs(math.floor(m_p) - m_exact) <= 1


def test_observer_bound_diverges(caplog):
    with caplog.at_level(logging.WARNING, logger="qrevsim"):
        m_p, m_exact = max_observers(math.exp(-2.0), 0.25 - 1e-12)
    assert m_p > 1e9
    assert m_exact == 13
    assert "diverges" in caplog.text


def test_observer_bound_out_of_range(c0):
    with pytest.raises(InvalidParameter):
        max_observers(c0, 0.25)
    assert max_observers(c0, 1e-6)[1] == 0
