from groups.exceptions import AlgebraError


class Inconsistent(AlgebraError):
    """Представление не согласовано: критическая пара не сводится к одной нормальной форме."""

    def __init__(self, message, pair=None):
        self.pair = pair
        super().__init__(message)
