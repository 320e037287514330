from groups.exceptions import AlgebraError


class NoSolution(AlgebraError):
    """Система A x = t не имеет целых решений (это вердикт, а не сбой)."""


class InternalRankMismatch(AlgebraError):
    """Ранг ядра не совпадает с формулой точности."""


class GroupLawViolation(AlgebraError):
    """Матрицы действия нарушают порядок или коммутативность."""
