class AlgebraError(Exception):
    """Базовая ошибка всех вычислений проекта."""


class InvalidGroupSpec(AlgebraError):
    """Некорректное описание группы (простое число или порядки факторов)."""


class BoundExceeded(AlgebraError):
    """Размер задачи превышает настроенную границу перебора."""

    def __init__(self, what, size, bound):
        self.what = what
        self.size = size
        self.bound = bound
        super().__init__(f"{what}: размер {size} превышает границу {bound}")
