"""
Closed-form relations between measurement strength, reliability, reversibility,
Bob's fine and the information he gains, with and without other observers.
"""

import logging
import math
import numpy as np
from scipy.optimize import minimize_scalar
from qrevsim.Errors import InvalidParameter
from qrevsim.coherent.core import c_of_eta, error_probability
from qrevsim.analysis.TradeoffPoint import TradeoffPoint

HALF_SQRT2 = math.sqrt(2.0) / 2.0
FINE_MIN = 1.0 - HALF_SQRT2

logger = logging.getLogger("qrevsim")


def _check_c0(c0: float):
    if not 0.0 < c0 < 1.0:
        raise InvalidParameter(f"c0 must lie in (0,1), got {c0!r}")


def _check_probability(p: float, upper: float = 1.0):
    if not 0.0 <= p <= upper:
        raise InvalidParameter(f"Probability must lie in [0,{upper}], got {p!r}")


def reliability_of(c: float) -> float:
    return math.sqrt((1.0 - c) * (1.0 + c))


def fidelity_of(d_rev: float) -> float:
    return 0.5 + 0.5 * d_rev


def tradeoff_point(c0: float, eta: float) -> TradeoffPoint:
    _check_c0(c0)
    c = c_of_eta(c0, eta)
    d_rel = reliability_of(c)
    return TradeoffPoint(eta, c, error_probability(c), fidelity_of(c), d_rel, c,
                         math.atan2(d_rel, c), 1.0 - 0.5 * (c + d_rel))


def _excess_fine(c: float) -> float:
    """Fine above its minimum, sqrt(2) sin^2((theta - pi/4)/2), without cancellation at the optimum."""
    theta = math.acos(min(max(c, 0.0), 1.0))
    return math.sqrt(2.0) * math.sin(0.5 * (theta - math.pi / 4.0)) ** 2


def optimal_eta(c0: float) -> tuple:
    """Strength at which c(eta) = sqrt(2)/2, where the fine is minimal.

Returns:
    (eta_star, fine_min, clamped). When c0 > sqrt(2)/2 no strength reaches the
    optimum angle, eta_star is clamped to 1 and fine_min is the fine at eta = 1.
    """
    _check_c0(c0)
    eta_star = math.log(HALF_SQRT2) / math.log(c0)
    if eta_star > 1.0:
        logger.debug("c0=%r is above sqrt(2)/2, optimal strength clamped to 1", c0)
        return 1.0, tradeoff_point(c0, 1.0).fine_expectation, True
    return eta_star, FINE_MIN, False


def golden_section_eta(c0: float, grid_size: int = 101, tol: float = 1e-12) -> float:
    """Numerical minimizer of the fine over eta in [0,1], independent of :func:`optimal_eta`."""
    _check_c0(c0)
    grid = np.linspace(0.0, 1.0, grid_size)
    excess = [_excess_fine(c_of_eta(c0, eta)) for eta in grid]
    best = int(np.argmin(excess))
    if best == 0 or best == grid_size - 1:
        return float(grid[best])
    result = minimize_scalar(lambda eta: _excess_fine(c_of_eta(c0, min(max(eta, 0.0), 1.0))),
                             bracket=(grid[best - 1], grid[best], grid[best + 1]), method='golden', tol=tol)
    return float(result.x)


def k_factor(c0: float, eta_tilde: float) -> float:
    """K = c0^(-2 eta_tilde), the weight of d_rev^2 in Bob's tradeoff under other observers."""
    return math.exp(-2.0 * eta_tilde * math.log(c0))


def multi_observer_curve(c0: float, eta_tilde: float, etas) -> list:
    """(d_rel, d_rev, fine) of Bob for each strength, with other observers taking eta_tilde in total."""
    _check_c0(c0)
    if not 0.0 <= eta_tilde <= 1.0:
        raise InvalidParameter(f"eta_tilde must lie in [0,1], got {eta_tilde!r}")
    curve = []
    for eta in etas:
        if eta + eta_tilde > 1.0 + 1e-12:
            raise InvalidParameter(f"eta + eta_tilde = {eta + eta_tilde!r} exceeds 1")
        d_rev = c_of_eta(c0, min(eta + eta_tilde, 1.0))
        d_rel = reliability_of(c_of_eta(c0, eta))
        curve.append((d_rel, d_rev, 1.0 - 0.5 * (d_rel + d_rev)))
    return curve


def optimal_eta_with_observers(c0: float, eta_tilde: float) -> tuple:
    """Bob's best strength when others have already tapped eta_tilde.

Bob maximizes c0^eta_tilde c + sqrt(1-c^2) over c = c0^eta, which is stationary
at c = a/sqrt(1+a^2) with a = c0^eta_tilde.

Returns:
    (eta_star, fine_min, clamped), eta_star restricted to [0, 1 - eta_tilde].
    """
    _check_c0(c0)
    if not 0.0 <= eta_tilde <= 1.0:
        raise InvalidParameter(f"eta_tilde must lie in [0,1], got {eta_tilde!r}")
    a = c_of_eta(c0, eta_tilde)
    c_star = a / math.sqrt(1.0 + a * a)
    eta_star = math.log(c_star) / math.log(c0)
    limit = 1.0 - eta_tilde
    clamped = eta_star > limit
    eta_star = min(eta_star, limit)
    d_rel, d_rev, fine = multi_observer_curve(c0, eta_tilde, [eta_star])[0]
    return eta_star, fine, clamped


def reversibility(c0: float, eta: float, eta_tilde: float = 0.0, knows_total_tap: bool = True) -> float:
    """D_rev after Bob's reversal.

When Bob only removes his own residual sqrt(1-eta) N epsilon the counter keeps
a leftover displacement (sqrt(1-eta_T) - sqrt(1-eta)) N epsilon, which adds to
the exponent.
    """
    if not 0.0 < c0 <= 1.0:
        raise InvalidParameter(f"c0 must lie in (0,1], got {c0!r}")
    eta_total = eta + eta_tilde
    if eta_total > 1.0 + 1e-12:
        raise InvalidParameter(f"eta + eta_tilde = {eta_total!r} exceeds 1")
    eta_total = min(eta_total, 1.0)
    exponent = eta_total
    if not knows_total_tap:
        exponent += (math.sqrt(1.0 - eta_total) - math.sqrt(1.0 - eta)) ** 2
    return math.exp(exponent * math.log(c0))


def binary_entropy(p: float) -> float:
    """Shannon entropy in bits, 0 log 0 = 0."""
    _check_probability(p)
    return -sum(q * np.log2(q) for q in (p, 1.0 - p) if q > 0.0)


def mutual_information(p_error: float) -> float:
    return 1.0 - binary_entropy(p_error)


def joint_distribution(p_error: float) -> np.ndarray:
    """P[x, y] of Alice's spin x and Bob's reported spin y (index 0 = down, 1 = up)."""
    _check_probability(p_error)
    agree = 0.5 * (1.0 - p_error)
    disagree = 0.5 * p_error
    return np.array([[agree, disagree], [disagree, agree]])


def mutual_information_from_joint(joint: np.ndarray) -> float:
    joint = np.asarray(joint, dtype=float)
    if joint.shape != (2, 2) or np.any(joint < 0) or abs(joint.sum() - 1.0) > 1e-12:
        raise InvalidParameter(f"Joint distribution must be a normalized 2x2 table, got {joint.tolist()}")
    px = joint.sum(axis=1)
    py = joint.sum(axis=0)
    total = 0.0
    for x in range(2):
        for y in range(2):
            if joint[x, y] > 0.0:
                total += joint[x, y] * np.log2(joint[x, y] / (px[x] * py[y]))
    return float(total)


def fidelity_from_p_error(p_error: float) -> float:
    """F on the single-observer circle, 1/2 + sqrt(p(1-p))."""
    _check_probability(p_error, 0.5)
    return 0.5 + math.sqrt(p_error * (1.0 - p_error))


def observer_reliability(c0: float, eta_k: float) -> float:
    """D_rel an observer with strength eta_k would reach with an optimal measurement."""
    return reliability_of(c_of_eta(c0, eta_k))


def max_observers(c0: float, p: float) -> tuple:
    """How many equal-share observers can each reach an error probability <= p.

Returns:
    (m_p, m_exact): the bound 2 log(1/c0) / log(1/4p), which replaces 4p(1-p) by
    4p, and the largest integer M with P_error(c0^(1/M)) <= p found by search.
    """
    _check_c0(c0)
    if not 0.0 < p < 0.25:
        raise InvalidParameter(f"p must lie in (0,1/4), got {p!r}")
    m_p = 2.0 * math.log(1.0 / c0) / math.log(1.0 / (4.0 * p))
    if m_p > 1e9:
        logger.warning("Observer bound %g diverges as p approaches 1/4", m_p)

    def reliable(m: int) -> bool:
        return error_probability(math.exp(math.log(c0) / m)) <= p

    if not reliable(1):
        return m_p, 0
    low, high = 1, 2
    while reliable(high):
        low, high = high, 2 * high
    while high - low > 1:
        middle = (low + high) // 2
        if reliable(middle):
            low = middle
        else:
            high = middle
    return m_p, low
