import math
from dataclasses import dataclass, field
from typing import List, Tuple

from sympy import Poly, symbols

t = symbols('t')

TORSION_FREE = 'torsion_free'
CYCLIC_OF_ORDER_P = 'cyclic_of_order_p'
UNKNOWN = 'unknown'


@dataclass(frozen=True)
class FiltrationElement:
    """Σ cₖ tᵏ в ℤ[t]/(t^{N+1}), t = ξ − 1."""
    coeffs: Tuple[int, ...]

    @classmethod
    def from_poly(cls, poly: Poly, N: int) -> 'FiltrationElement':
        low_first = list(reversed(poly.all_coeffs())) if not poly.is_zero else []
        low_first = [int(c) for c in low_first[:N + 1]]
        return cls(tuple(low_first + [0] * (N + 1 - len(low_first))))

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def to_poly(self) -> Poly:
        return Poly(list(reversed(self.coeffs)), t, domain='ZZ')

    def _check(self, other: 'FiltrationElement'):
        if self.N != other.N:
            raise ValueError(f"разные степени усечения {self.N} и {other.N}")

    def __add__(self, other: 'FiltrationElement') -> 'FiltrationElement':
        self._check(other)
        return FiltrationElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: 'FiltrationElement') -> 'FiltrationElement':
        self._check(other)
        return FiltrationElement(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rmul__(self, k: int) -> 'FiltrationElement':
        return FiltrationElement(tuple(int(k) * c for c in self.coeffs))

    def __mul__(self, other: 'FiltrationElement') -> 'FiltrationElement':
        self._check(other)
        return FiltrationElement.from_poly(self.to_poly() * other.to_poly(), self.N)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def degree(self) -> float:
        """Младшая ненулевая степень t; math.inf для нуля."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return math.inf

    def to_dict(self) -> dict:
        return {'N': self.N, 'coeffs': list(self.coeffs)}


@dataclass(frozen=True)
class TorsionReport:
    verdict: str
    reasons: List[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {'verdict': self.verdict, 'reasons': list(self.reasons)}
