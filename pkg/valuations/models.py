"""Значения в ℚʳ и алгебра 𝔸_Δ над итерированными рядами Лорана.

От рядов остаются только мономы: переменные x₁…x_r добавляются к решётке
как блок ℤʳ с тривиальным действием.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, total_ordering
from typing import Dict, Optional, Tuple

import numpy as np

from crossedproducts.models import CrossedProductPresentation, MonomialFieldModel
from groups.models import GroupElement, GroupSpec
from lattices.linalg import integer_vector, zeros
from lattices.services import direct_sum, trivial_lattice
from .exceptions import LengthMismatch


def _fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f'{q.numerator}/{q.denominator}'


@total_ordering
@dataclass(frozen=True)
class ValueVector:
    """Порядок справа налево: старшая координата последняя."""
    coords: Tuple[Fraction, ...]

    @classmethod
    def of(cls, coords) -> 'ValueVector':
        return cls(tuple(Fraction(c) for c in coords))

    def _key(self, other: 'ValueVector'):
        if len(self.coords) != len(other.coords):
            raise LengthMismatch(f"длины {len(self.coords)} и {len(other.coords)}")
        return tuple(reversed(self.coords)), tuple(reversed(other.coords))

    def __lt__(self, other: 'ValueVector') -> bool:
        mine, theirs = self._key(other)
        return mine < theirs

    def __add__(self, other: 'ValueVector') -> 'ValueVector':
        self._key(other)
        return ValueVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def fractional(self) -> 'ValueVector':
        """Представитель смежного класса по ℤʳ с координатами в [0, 1)."""
        return ValueVector(tuple(c - (c.numerator // c.denominator) for c in self.coords))

    def __str__(self):
        return '(' + ','.join(_fraction_str(c) for c in self.coords) + ')'

    def to_dict(self) -> list:
        return [_fraction_str(c) for c in self.coords]


@dataclass(frozen=True, eq=False)
class PowerSeriesACP:
    """𝔸_Δ: то же u, bᵢ заменено на bᵢ·x^{xshiftᵢ + eᵢ}."""
    base: CrossedProductPresentation
    xshift: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        r = self.base.group.r
        shift = self.xshift or tuple((0,) * r for _ in range(r))
        shift = tuple(tuple(int(c) for c in v) for v in shift)
        if len(shift) != r or any(len(v) != r for v in shift):
            raise ValueError(f"xshift должен состоять из {r} векторов длины {r}")
        object.__setattr__(self, 'xshift', shift)

    @property
    def group(self) -> GroupSpec:
        return self.base.group

    @property
    def label(self) -> str:
        return f'A[{self.base.label}]'

    def x_exponent(self, i: int) -> Tuple[int, ...]:
        """v(bᵢxᵢ) в ℤʳ."""
        return tuple(s + (1 if j == i else 0) for j, s in enumerate(self.xshift[i]))

    @cached_property
    def presentation(self) -> CrossedProductPresentation:
        """Представление над M ⊕ ℤʳ, последний блок - показатели x."""
        G = self.group
        r = G.r
        P = self.base
        lattice = direct_sum(P.lattice, trivial_lattice(G, r, label='x'), label=f'{P.lattice.label}+x')
        pad = zeros(r)
        u = tuple(tuple(np.concatenate([P.u[i][j], pad]) for j in range(r)) for i in range(r))
        b = tuple(np.concatenate([P.b[i], integer_vector(self.x_exponent(i))]) for i in range(r))
        model = MonomialFieldModel(lattice, f'{P.model.descriptor}((x))')
        return CrossedProductPresentation(G, model, u, b, label=self.label)

    def z_value(self, i: int) -> ValueVector:
        n = self.group.orders[i]
        return ValueVector(tuple(Fraction(c, n) for c in self.x_exponent(i)))

    def to_dict(self) -> dict:
        return {
            'base': self.base.label,
            'xshift': [list(v) for v in self.xshift],
            'z_values': [self.z_value(i).to_dict() for i in range(self.group.r)],
        }


@dataclass(frozen=True, eq=False)
class ValueData:
    gamma_d: Tuple[ValueVector, ...]
    quotient: Tuple[int, ...]
    theta: Dict[str, GroupElement]
    isomorphic: bool

    @property
    def index(self) -> int:
        total = 1
        for d in self.quotient:
            total *= d
        return total

    def to_dict(self) -> dict:
        return {
            'gamma_d': [v.to_dict() for v in self.gamma_d],
            'quotient': list(self.quotient),
            'theta': {k: str(g) for k, g in self.theta.items()},
            'isomorphic_to_group': self.isomorphic,
        }


@dataclass(frozen=True, eq=False)
class GradedSearchResult:
    """ω = k·x^λ·z^m̄ с центральной ω^p; степень γ = v(ω)."""
    found: bool
    m: Optional[GroupElement] = None
    k: Optional[np.ndarray] = None
    lam: Optional[np.ndarray] = None
    degree: Optional[ValueVector] = None
    certified: bool = False
    examined: int = 0

    def to_dict(self) -> dict:
        element = None
        if self.found:
            element = {
                'm': list(self.m.exps),
                'k': [int(x) for x in self.k],
                'lambda': [int(x) for x in self.lam],
            }
        return {
            'found': self.found,
            'element': element,
            'degree': self.degree.to_dict() if self.degree is not None else None,
            'certified': self.certified,
            'examined': self.examined,
        }
