import cmath
import math
from qrevsim.Errors import InvalidParameter


class CoherentAmplitude:
    """Complex amplitude of a coherent state of an oscillator mode."""

    def __init__(self, value: complex):
        value = complex(value)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise InvalidParameter(f"Coherent amplitude must be finite, got {value!r}")
        self.value = value

    @classmethod
    def of(klass, value) -> 'CoherentAmplitude':
        if isinstance(value, CoherentAmplitude):
            return value
        return klass(value)

    def scaled(self, factor: float) -> 'CoherentAmplitude':
        return CoherentAmplitude(self.value * factor)

    def rotated(self, angle: float) -> 'CoherentAmplitude':
        return CoherentAmplitude(self.value * cmath.exp(-1j * angle))

    def __abs__(self):
        return abs(self.value)

    def __eq__(self, other):
        if isinstance(other, CoherentAmplitude):
            return self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"CoherentAmplitude({self.value!r})"
