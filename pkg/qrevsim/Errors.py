class QRevError(Exception):
    """Base class of every error raised by qrevsim."""


class InvalidParameter(QRevError, ValueError):
    pass


class DegenerateDiscrimination(QRevError):
    """The two probe states are indistinguishable (overlap within tolerance of 1).

Callers replace the measurement by a fair coin with no change of state.
    """

    def __init__(self, c: float, tolerance: float):
        super(DegenerateDiscrimination, self).__init__(
            f"Overlap c={c!r} is within {tolerance} of 1, the states cannot be discriminated")
        self.c = c
        self.tolerance = tolerance


class CutoffInsufficient(QRevError):
    pass


class ZeroProbabilityOutcome(QRevError):
    pass
