from groups.exceptions import AlgebraError


class LengthMismatch(AlgebraError):
    """Сравниваются векторы значений разной длины."""
