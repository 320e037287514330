from dataclasses import dataclass, field
from functools import cached_property
from math import lcm, prod
from typing import Iterable, Tuple

import sympy

from .exceptions import InvalidGroupSpec


def _is_power_of(p: int, n: int) -> bool:
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


@dataclass(frozen=True, order=True)
class GroupElement:
    """Элемент σ^m̄ группы, хранится вектором показателей."""
    exps: Tuple[int, ...]

    def __str__(self):
        return '(' + ','.join(str(e) for e in self.exps) + ')'

    @property
    def is_identity(self) -> bool:
        return not any(self.exps)


@dataclass(frozen=True)
class GroupSpec:
    """Конечная абелева p-группа ⟨σ₁⟩×…×⟨σ_r⟩ с фиксированным разложением."""
    p: int
    orders: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, 'orders', tuple(int(n) for n in self.orders))
        if not sympy.isprime(self.p):
            raise InvalidGroupSpec(f"p={self.p} не является простым")
        if not self.orders:
            raise InvalidGroupSpec("группа должна иметь хотя бы один циклический фактор")
        for n in self.orders:
            if n < 2:
                raise InvalidGroupSpec(f"фактор порядка {n} недопустим")
            if not _is_power_of(self.p, n):
                raise InvalidGroupSpec(f"порядок {n} не является степенью {self.p}")

    @classmethod
    def parse(cls, p, text: str) -> 'GroupSpec':
        """Разбор строки вида "2,2,2"."""
        try:
            orders = tuple(int(part) for part in str(text).replace(' ', '').split(',') if part)
        except ValueError as exc:
            raise InvalidGroupSpec(f"не удалось разобрать группу {text!r}") from exc
        return cls(p=int(p), orders=orders)

    @property
    def r(self) -> int:
        return len(self.orders)

    @cached_property
    def order(self) -> int:
        return prod(self.orders)

    @cached_property
    def exponent(self) -> int:
        return lcm(*self.orders)

    @property
    def is_cyclic(self) -> bool:
        return self.r == 1

    @property
    def identity(self) -> GroupElement:
        return GroupElement((0,) * self.r)

    def element(self, exps: Iterable[int]) -> GroupElement:
        exps = tuple(exps)
        if len(exps) != self.r:
            raise InvalidGroupSpec(f"длина вектора {exps} не равна рангу {self.r}")
        return GroupElement(tuple(e % n for e, n in zip(exps, self.orders)))

    def generator(self, i: int) -> GroupElement:
        return self.element(1 if k == i else 0 for k in range(self.r))

    def add(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return self.element(a + b for a, b in zip(g.exps, h.exps))

    def neg(self, g: GroupElement) -> GroupElement:
        return self.element(-a for a in g.exps)

    def scale(self, k: int, g: GroupElement) -> GroupElement:
        return self.element(k * a for a in g.exps)

    def index(self, g: GroupElement) -> int:
        """Номер элемента в лексикографическом перечислении."""
        idx = 0
        for e, n in zip(g.exps, self.orders):
            idx = idx * n + e
        return idx

    def label(self) -> str:
        return ','.join(str(n) for n in self.orders)

    def to_dict(self) -> dict:
        return {'p': self.p, 'orders': list(self.orders)}


@dataclass(frozen=True)
class Subgroup:
    """Подгруппа: упорядоченный список элементов и порождающее множество."""
    group: GroupSpec
    elements: Tuple[GroupElement, ...]
    generators: Tuple[GroupElement, ...]
    is_cyclic: bool

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def key(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.key

    def to_dict(self) -> dict:
        return {
            'order': self.order,
            'generators': [str(g) for g in self.generators],
            'is_cyclic': self.is_cyclic,
        }
