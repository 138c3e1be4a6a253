import math
from qrevsim.Errors import InvalidParameter


class ModelParams:
    """Physical configuration of the measurement apparatus.

Attributes:
    n_qutrits (int):
        Number N of detector qutrits.
    epsilon (float):
        Counter displacement contributed by each qutrit.
    omega (float):
        Counter oscillation frequency in radians per unit time.
    bob_eta (float):
        Fraction of the initial counter energy tapped by Bob's probe.
    other_etas (tuple):
        Fractions tapped by every other (silent) observer.
    """

    def __init__(self, n_qutrits: int, epsilon: float, omega: float = 0.0, bob_eta: float = 0.0,
                 other_etas: tuple = ()):
        if int(n_qutrits) != n_qutrits or n_qutrits < 1:
            raise InvalidParameter(f"n_qutrits must be a positive integer, got {n_qutrits!r}")
        if not math.isfinite(epsilon) or epsilon < 0:
            raise InvalidParameter(f"epsilon must be a finite non negative real, got {epsilon!r}")
        if not math.isfinite(omega) or omega < 0:
            raise InvalidParameter(f"omega must be a finite non negative real, got {omega!r}")
        if not 0.0 <= bob_eta <= 1.0:
            raise InvalidParameter(f"bob_eta must lie in [0,1], got {bob_eta!r}")
        for eta in other_etas:
            if not 0.0 < eta <= 1.0:
                raise InvalidParameter(f"Every observer fraction must lie in (0,1], got {eta!r}")
        self.n_qutrits = int(n_qutrits)
        self.epsilon = float(epsilon)
        self.omega = float(omega)
        self.bob_eta = float(bob_eta)
        self.other_etas = tuple(float(eta) for eta in other_etas)
        if self.eta_total > 1.0 + 1e-12:
            raise InvalidParameter(f"Total tapped fraction {self.eta_total!r} exceeds 1")

    @property
    def displacement(self) -> float:
        """Counter amplitude N*epsilon after the pre-measurement."""
        return self.n_qutrits * self.epsilon

    @property
    def log_c0(self) -> float:
        return -2.0 * self.displacement ** 2

    @property
    def c0(self) -> float:
        return math.exp(self.log_c0)

    @property
    def eta_tilde(self) -> float:
        return math.fsum(self.other_etas)

    @property
    def eta_total(self) -> float:
        return math.fsum((self.bob_eta,) + self.other_etas)

    def with_etas(self, bob_eta: float = None, other_etas: tuple = None) -> 'ModelParams':
        return ModelParams(self.n_qutrits, self.epsilon, self.omega,
                           self.bob_eta if bob_eta is None else bob_eta,
                           self.other_etas if other_etas is None else other_etas)

    def __eq__(self, other):
        if not isinstance(other, ModelParams):
            return NotImplemented
        return (self.n_qutrits, self.epsilon, self.omega, self.bob_eta, self.other_etas) == \
               (other.n_qutrits, other.epsilon, other.omega, other.bob_eta, other.other_etas)

    def __repr__(self):
        return f"ModelParams(n_qutrits={self.n_qutrits}, epsilon={self.epsilon!r}, omega={self.omega!r}, " \
               f"bob_eta={self.bob_eta!r}, other_etas={self.other_etas!r})"
