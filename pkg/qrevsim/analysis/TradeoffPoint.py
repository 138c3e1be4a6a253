import math


class TradeoffPoint:
    """Reliability and reversibility of one measurement strength.

Attributes:
    eta (float): measurement strength.
    c (float): overlap of Bob's two probe states.
    p_error (float): error probability of the optimal probe measurement.
    fidelity (float): probability that Alice's Bell check succeeds.
    d_rel (float): degree of reliability, 1 - 2 p_error.
    d_rev (float): degree of reversibility, 2 fidelity - 1.
    theta (float): angle with d_rel = sin(theta) and d_rev = cos(theta).
    fine_expectation (float): 1 - fidelity + p_error.
    """

    def __init__(self, eta: float, c: float, p_error: float, fidelity: float, d_rel: float, d_rev: float,
                 theta: float, fine_expectation: float):
        self.eta = eta
        self.c = c
        self.p_error = p_error
        self.fidelity = fidelity
        self.d_rel = d_rel
        self.d_rev = d_rev
        self.theta = theta
        self.fine_expectation = fine_expectation

    @property
    def circle_residual(self) -> float:
        """(2F-1)^2 + (1-2P)^2 - 1, zero up to rounding."""
        return (2.0 * self.fidelity - 1.0) ** 2 + (1.0 - 2.0 * self.p_error) ** 2 - 1.0

    def values(self) -> list:
        return [self.eta, self.c, self.p_error, self.fidelity, self.d_rel, self.d_rev, self.theta,
                self.fine_expectation, abs(self.circle_residual)]

    @classmethod
    def header(klass):
        return "eta,c,p_error,fidelity,d_rel,d_rev,theta,fine,residual"

    def __str__(self):
        return ",".join(map(repr, self.values()))

    def __repr__(self):
        return f"TradeoffPoint(eta={self.eta!r}, c={self.c!r}, theta={math.degrees(self.theta):.6g} deg)"
