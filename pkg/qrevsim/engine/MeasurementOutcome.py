PLUS = 'plus'
MINUS = 'minus'


class MeasurementOutcome:
    """Outcome label of a measurement and the Born probability it had."""

    def __init__(self, label: str, probability: float):
        self.label = label
        self.probability = probability

    @property
    def sign(self) -> int:
        return 1 if self.label == PLUS else -1

    def __eq__(self, other):
        if not isinstance(other, MeasurementOutcome):
            return NotImplemented
        return self.label == other.label and self.probability == other.probability

    def __repr__(self):
        return f"MeasurementOutcome({self.label!r}, {self.probability!r})"
