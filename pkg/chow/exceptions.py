from groups.exceptions import AlgebraError


class InvalidRegime(AlgebraError):
    """Формулы для x и y применимы только при n ≥ 2 (p нечётно) и n ≥ 3 (p = 2)."""


class ContradictionDetected(AlgebraError):
    """Одновременно сработали правило «без кручения» и правило «кручение порядка p»."""

    def __init__(self, message, reasons=()):
        self.reasons = list(reasons)
        super().__init__(message)
