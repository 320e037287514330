from groups.exceptions import AlgebraError


class TelescopeFailure(AlgebraError):
    """j(φ(g)) ≠ g − 1: соглашение о границе суммы в φ нарушено."""


class NotInKernel(AlgebraError):
    """Вектор P₂ должен лежать в A₂ = ker j, но не лежит."""
