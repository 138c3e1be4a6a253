"""
Scalar mathematics of coherent states and of the optimal discrimination of two
of them. Everything here is a pure function of immutable values.
"""

import math
import numbers
from qrevsim.Errors import InvalidParameter, DegenerateDiscrimination
from qrevsim.coherent.CoherentAmplitude import CoherentAmplitude
from qrevsim.coherent.OverlapScalar import OverlapScalar
from qrevsim.coherent.ModelParams import ModelParams
from qrevsim.coherent.DiscriminationSpec import DiscriminationSpec

DEGENERATE_TOLERANCE = 1e-9
CLAMP_TOLERANCE = 1e-12


def coherent_overlap(alpha, beta) -> OverlapScalar:
    """Returns <alpha|beta> = exp(-|alpha|^2/2 - |beta|^2/2 + alpha* beta).

The real part of the exponent equals -|alpha-beta|^2/2, which is how it is
evaluated so that the log-magnitude is exact for any separation.
    """
    a = CoherentAmplitude.of(alpha).value
    b = CoherentAmplitude.of(beta).value
    return OverlapScalar(-0.5 * abs(a - b) ** 2, (a.conjugate() * b).imag)


def log_overlap(a: complex, b: complex) -> complex:
    """Complex logarithm of <a|b> on plain complex amplitudes."""
    d = a - b
    return complex(-0.5 * (d.real * d.real + d.imag * d.imag), (a.conjugate() * b).imag)


def c0_of(params: ModelParams) -> float:
    return math.exp(params.log_c0)


def c_of_eta(c0: float, eta: float) -> float:
    if not 0.0 < c0 <= 1.0:
        raise InvalidParameter(f"c0 must lie in (0,1], got {c0!r}")
    if not 0.0 <= eta <= 1.0:
        raise InvalidParameter(f"Measurement strength eta must lie in [0,1], got {eta!r}")
    return math.exp(eta * math.log(c0))


def clamp_overlap(c: float) -> float:
    if not isinstance(c, numbers.Real):
        raise InvalidParameter(f"Overlap must be a real number, got {c!r}")
    if c < -CLAMP_TOLERANCE or c > 1.0 + CLAMP_TOLERANCE or math.isnan(c):
        raise InvalidParameter(f"Overlap must lie in [0,1], got {c!r}")
    return min(max(c, 0.0), 1.0)


def error_probability(c: float) -> float:
    """(1 - sqrt(1-c^2))/2 evaluated without cancellation for small c."""
    c = clamp_overlap(c)
    root = math.sqrt((1.0 - c) * (1.0 + c))
    return c * c / (2.0 * (1.0 + root))


def make_discrimination(c: float, tolerance: float = DEGENERATE_TOLERANCE) -> DiscriminationSpec:
    c = clamp_overlap(c)
    if c >= 1.0 - tolerance:
        raise DegenerateDiscrimination(c, tolerance)
    plus = math.sqrt(1.0 + c)
    minus = math.sqrt(1.0 - c)
    denominator = 2.0 * plus * minus
    return DiscriminationSpec(c, (plus + minus) / denominator, (plus - minus) / denominator,
                              error_probability(c))


def projection_amplitudes(spec: DiscriminationSpec) -> tuple:
    """Returns (<+|+A>, <+|-A>).

Algebraically these are gamma - beta*c and gamma*c - beta; they are evaluated
in the equivalent form (sqrt(1+c) +- sqrt(1-c))/2, which stays accurate when
gamma and beta grow large near c = 1. By symmetry <-|-A> and <-|+A> take the
same two values.
    """
    plus = math.sqrt(1.0 + spec.c)
    minus = math.sqrt(1.0 - spec.c)
    return (plus + minus) / 2.0, (plus - minus) / 2.0
