import math


class DiscriminationSpec:
    """Optimal projective measurement separating |+A> from |-A>.

The measurement projects onto |+-> = gamma|+-A> - beta|-+A>, the pair of
orthogonal states that straddle the two coherent states symmetrically.

Attributes:
    c (float):
        Overlap <+A|-A>, in [0,1).
    gamma (float), beta_coef (float):
        Expansion coefficients of the projector states.
    p_error (float):
        Probability of projecting onto the wrong outcome.
    """

    def __init__(self, c: float, gamma: float, beta_coef: float, p_error: float):
        self.c = c
        self.gamma = gamma
        self.beta_coef = beta_coef
        self.p_error = p_error

    @property
    def normalization_residual(self) -> float:
        return self.gamma ** 2 + self.beta_coef ** 2 - 2 * self.gamma * self.beta_coef * self.c - 1.0

    @property
    def orthogonality_residual(self) -> float:
        return (self.gamma ** 2 + self.beta_coef ** 2) * self.c - 2 * self.gamma * self.beta_coef

    @property
    def reliability(self) -> float:
        return math.sqrt((1.0 - self.c) * (1.0 + self.c))

    def __repr__(self):
        return f"DiscriminationSpec(c={self.c!r}, gamma={self.gamma!r}, beta_coef={self.beta_coef!r}, " \
               f"p_error={self.p_error!r})"
