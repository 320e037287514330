from groups.exceptions import AlgebraError


class NotACocycle(AlgebraError):
    """δc ≠ 0."""


class InfiniteClassOrder(AlgebraError):
    """Ненулевой класс в H⁰ = M^G: группа без кручения, порядок бесконечен."""
