import cmath
import math
from qrevsim.Errors import InvalidParameter


class OverlapScalar:
    """Inner product of two coherent states kept as (log |z|, arg z).

The magnitude of coherent state overlaps decays as exp(-|alpha-beta|^2/2) and
underflows double precision long before the physics becomes uninteresting,
so products of overlaps are accumulated in the log domain. The linear value
is only materialized on request and is lossy below ~1e-300.

Attributes:
    log_magnitude (float):
        Natural logarithm of the modulus, always <= 0.
    phase (float):
        Argument in radians.
    """

    def __init__(self, log_magnitude: float, phase: float = 0.0):
        if math.isnan(log_magnitude) or log_magnitude > 1e-12:
            raise InvalidParameter(f"Overlap log-magnitude must be <= 0, got {log_magnitude!r}")
        self.log_magnitude = min(float(log_magnitude), 0.0)
        self.phase = float(phase)

    @classmethod
    def one(klass) -> 'OverlapScalar':
        return klass(0.0, 0.0)

    @property
    def magnitude(self) -> float:
        return math.exp(self.log_magnitude)

    @property
    def value(self) -> complex:
        return cmath.rect(math.exp(self.log_magnitude), self.phase)

    def __mul__(self, other: 'OverlapScalar') -> 'OverlapScalar':
        return OverlapScalar(self.log_magnitude + other.log_magnitude, self.phase + other.phase)

    def conjugate(self) -> 'OverlapScalar':
        return OverlapScalar(self.log_magnitude, -self.phase)

    def __repr__(self):
        return f"OverlapScalar(log_magnitude={self.log_magnitude!r}, phase={self.phase!r})"
