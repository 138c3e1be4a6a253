class CheckResult:
    """Outcome of one verification check.

Attributes:
    name (str): what was checked, including the grid point.
    passed (bool): whether the deviation is within tolerance.
    deviation (float): measured discrepancy.
    tolerance (float): largest accepted discrepancy.
    detail (str): optional note, e.g. the exception of a failed run.
    """

    def __init__(self, name: str, deviation: float, tolerance: float, detail: str = ""):
        self.name = name
        self.deviation = float(deviation)
        self.tolerance = float(tolerance)
        self.passed = self.deviation <= self.tolerance
        self.detail = detail

    @classmethod
    def failure(klass, name: str, detail: str) -> 'CheckResult':
        check = klass(name, float('inf'), 0.0, detail)
        check.passed = False
        return check

    def __str__(self):
        return ",".join([self.name, "pass" if self.passed else "FAIL", f"{self.deviation:.3e}",
                         f"{self.tolerance:.0e}", self.detail.replace(",", ";")])

    @classmethod
    def header(klass):
        return "check,result,deviation,tolerance,detail"
