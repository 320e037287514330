import logging
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from groups.models import GroupElement, GroupSpec
from .exceptions import GroupLawViolation
from .linalg import identity, integer_matrix, integer_vector

logger = logging.getLogger(__name__)


def _power(A: np.ndarray, k: int) -> np.ndarray:
    result = identity(A.shape[0])
    for _ in range(k):
        result = result.dot(A)
    return result


@dataclass(frozen=True, eq=False)
class GLattice:
    """Свободный ℤ-модуль с коммутирующими матрицами действия σ₁…σ_r."""
    group: GroupSpec
    actions: Tuple[np.ndarray, ...]
    label: str = ''
    _cache: Dict[GroupElement, np.ndarray] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        actions = tuple(integer_matrix(A) for A in self.actions)
        object.__setattr__(self, 'actions', actions)
        if len(actions) != self.group.r:
            raise GroupLawViolation(f"{self.label}: матриц {len(actions)}, а ранг группы {self.group.r}")
        for A in actions:
            if A.shape != (self.rank, self.rank):
                raise GroupLawViolation(f"{self.label}: матрица действия размера {A.shape}")

    @property
    def rank(self) -> int:
        return self.actions[0].shape[0] if self.actions else 0

    def validate(self):
        """Порядок матриц, коммутативность и обратимость над ℤ."""
        I = identity(self.rank)
        for i, (A, n) in enumerate(zip(self.actions, self.group.orders)):
            # A^n = I даёт и обратимость: A⁻¹ = A^(n-1)
            if not (_power(A, n) == I).all():
                raise GroupLawViolation(f"{self.label}: σ{i + 1}^{n} действует нетривиально")
        for i, A in enumerate(self.actions):
            for j in range(i + 1, len(self.actions)):
                B = self.actions[j]
                if not (A.dot(B) == B.dot(A)).all():
                    raise GroupLawViolation(f"{self.label}: σ{i + 1} и σ{j + 1} не коммутируют")
        return self

    def action(self, g: GroupElement) -> np.ndarray:
        """Матрица A_g = ∏ Aᵢ^{mᵢ}."""
        cached = self._cache.get(g)
        if cached is None:
            cached = identity(self.rank)
            for A, m in zip(self.actions, g.exps):
                cached = cached.dot(_power(A, m))
            self._cache[g] = cached
        return cached

    def act(self, g: GroupElement, v) -> np.ndarray:
        return self.action(g).dot(integer_vector(v))

    def zero(self) -> np.ndarray:
        return integer_vector([0] * self.rank)

    def vector(self, coords) -> 'LatticeVector':
        return LatticeVector(tuple(int(c) for c in coords), self)

    def to_dict(self) -> dict:
        return {
            'label': self.label,
            'rank': self.rank,
            'actions': [A.tolist() for A in self.actions],
        }


@dataclass(frozen=True)
class LatticeVector:
    coords: Tuple[int, ...]
    home: GLattice = field(compare=False, repr=False)

    def __post_init__(self):
        if len(self.coords) != self.home.rank:
            raise ValueError(f"длина {len(self.coords)} не равна рангу {self.home.rank}")

    def array(self) -> np.ndarray:
        return integer_vector(self.coords)


@dataclass(frozen=True, eq=False)
class LatticeMap:
    """Целочисленная матрица source → target."""
    matrix: np.ndarray
    source: GLattice
    target: GLattice
    equivariant: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'matrix', integer_matrix(self.matrix, rows=self.target.rank))

    def __call__(self, v) -> np.ndarray:
        return self.matrix.dot(integer_vector(v))

    def is_equivariant(self) -> bool:
        return all(
            (self.matrix.dot(A) == B.dot(self.matrix)).all()
            for A, B in zip(self.source.actions, self.target.actions)
        )

    def compose(self, inner: 'LatticeMap') -> 'LatticeMap':
        """self ∘ inner."""
        return LatticeMap(
            self.matrix.dot(inner.matrix), inner.source, self.target,
            equivariant=self.equivariant and inner.equivariant,
        )
