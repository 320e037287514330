import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from groups.models import GroupElement
from lattices.linalg import integer_matrix, integer_vector, is_zero, zeros
from lattices.models import GLattice


def tuple_index(position: Dict[GroupElement, int], size: int, gs: Sequence[GroupElement]) -> int:
    idx = 0
    for g in gs:
        idx = idx * size + position[g]
    return idx


@dataclass(frozen=True, eq=False)
class Cochain:
    """Неоднородная n-коцепь H^n → M, строки values упорядочены лексикографически."""
    degree: int
    module: GLattice
    domain: Tuple[GroupElement, ...]
    values: np.ndarray
    position: Dict[GroupElement, int] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'values', integer_matrix(self.values, rows=len(self.domain) ** self.degree))
        object.__setattr__(self, 'position', {g: k for k, g in enumerate(self.domain)})
        expected = (len(self.domain) ** self.degree, self.module.rank)
        if self.values.shape != expected:
            raise ValueError(f"таблица коцепи размера {self.values.shape}, ожидалось {expected}")

    @classmethod
    def from_function(cls, module: GLattice, degree: int, fn: Callable, domain: Sequence[GroupElement]) -> 'Cochain':
        domain = tuple(domain)
        rows = [integer_vector(fn(*gs)) for gs in itertools.product(domain, repeat=degree)]
        return cls(degree, module, domain, np.stack(rows) if rows else zeros(0, module.rank))

    @classmethod
    def from_flat(cls, module: GLattice, degree: int, vector, domain: Sequence[GroupElement]) -> 'Cochain':
        domain = tuple(domain)
        return cls(degree, module, domain, integer_vector(vector).reshape(len(domain) ** degree, module.rank))

    @property
    def group(self):
        return self.module.group

    def value(self, *gs: GroupElement) -> np.ndarray:
        return self.values[tuple_index(self.position, len(self.domain), gs)]

    def tuples(self):
        return itertools.product(self.domain, repeat=self.degree)

    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)

    def is_zero(self) -> bool:
        return is_zero(self.values)

    def _like(self, values) -> 'Cochain':
        return Cochain(self.degree, self.module, self.domain, values)

    def __add__(self, other: 'Cochain') -> 'Cochain':
        return self._like(self.values + other.values)

    def __sub__(self, other: 'Cochain') -> 'Cochain':
        return self._like(self.values - other.values)

    def __rmul__(self, k: int) -> 'Cochain':
        return self._like(int(k) * self.values)

    def to_dict(self) -> dict:
        return {
            'degree': self.degree,
            'module': self.module.label,
            'table': {
                '|'.join(str(g) for g in gs): [int(x) for x in self.value(*gs)]
                for gs in self.tuples()
            },
        }


@dataclass(frozen=True)
class CohomologyGroup:
    """Hⁿ(H, M) ≅ ℤ^free ⊕ ⊕ ℤ/dᵢ."""
    degree: int
    invariant_factors: Tuple[int, ...]
    free_rank: int = 0

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors and self.free_rank == 0

    @property
    def torsion_order(self) -> int:
        order = 1
        for d in self.invariant_factors:
            order *= d
        return order

    def to_dict(self) -> dict:
        return {
            'degree': self.degree,
            'invariant_factors': list(self.invariant_factors),
            'free_rank': self.free_rank,
        }


@dataclass(frozen=True, eq=False)
class CohomologyClass:
    rep: Cochain
    group_structure: CohomologyGroup
    order: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            'order': self.order,
            'group': self.group_structure.to_dict(),
            'rep': self.rep.to_dict(),
        }
