"""Абелевы скрещённые произведения над мономиальными моделями полей.

Коэффициенты - векторы решётки M (мультипликативная группа мономов,
записанная аддитивно). Элемент k·z^m̄ хранится как ZMonomial(k, m̄),
z^m̄ = z₁^{m₁}⋯z_r^{m_r}.
"""
from dataclasses import dataclass, field
from typing import Dict, Sequence, Tuple

import numpy as np

from cohomology.models import Cochain
from groups.models import GroupElement, GroupSpec
from lattices.linalg import identity, integer_vector, zeros
from lattices.models import GLattice


@dataclass(frozen=True)
class MonomialFieldModel:
    """Поле K, от которого остались только мономы: решётка M с действием G."""
    lattice: GLattice = field(compare=False)
    descriptor: str = ''

    @property
    def group(self) -> GroupSpec:
        return self.lattice.group

    def to_dict(self) -> dict:
        return {'descriptor': self.descriptor, 'lattice': self.lattice.to_dict()}


@dataclass(frozen=True)
class ZMonomial:
    coeff: Tuple[int, ...]
    zexp: GroupElement

    @classmethod
    def of(cls, coeff, zexp: GroupElement) -> 'ZMonomial':
        return cls(tuple(int(c) for c in coeff), zexp)

    def array(self) -> np.ndarray:
        return integer_vector(self.coeff)

    @property
    def is_scalar(self) -> bool:
        return self.zexp.is_identity

    def __str__(self):
        return f'{list(self.coeff)}·z^{self.zexp}'

    def to_dict(self) -> dict:
        return {'coeff': list(self.coeff), 'zexp': list(self.zexp.exps)}


@dataclass(frozen=True, eq=False)
class CrossedProductPresentation:
    """(K/F, G, z, u, b): zᵢzⱼ = uᵢⱼ zⱼzᵢ, zᵢ^{nᵢ} = bᵢ, zᵢ k = σᵢ(k) zᵢ."""
    group: GroupSpec
    model: MonomialFieldModel
    u: Tuple[Tuple[np.ndarray, ...], ...]
    b: Tuple[np.ndarray, ...]
    label: str = ''
    _swap_cache: Dict[tuple, np.ndarray] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        r = self.group.r
        u = tuple(tuple(integer_vector(self.u[i][j]) for j in range(r)) for i in range(r))
        b = tuple(integer_vector(v) for v in self.b)
        object.__setattr__(self, 'u', u)
        object.__setattr__(self, 'b', b)
        if len(u) != r or len(b) != r:
            raise ValueError(f"размер u или b не совпадает с рангом группы {r}")
        for v in b + tuple(x for row in u for x in row):
            if v.shape[0] != self.lattice.rank:
                raise ValueError(f"вектор длины {v.shape[0]} в решётке ранга {self.lattice.rank}")

    @property
    def lattice(self) -> GLattice:
        return self.model.lattice

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def one(self) -> ZMonomial:
        return ZMonomial.of(zeros(self.rank), self.group.identity)

    def z(self, i: int) -> ZMonomial:
        return ZMonomial.of(zeros(self.rank), self.group.generator(i))

    def zpow(self, m: GroupElement) -> ZMonomial:
        return ZMonomial.of(zeros(self.rank), self.group.element(m.exps))

    def scalar(self, k) -> ZMonomial:
        return ZMonomial.of(k, self.group.identity)

    def _prefix(self, m: Sequence[int], j: int) -> np.ndarray:
        """Матрица действия σ₁^{m₁}⋯σ_{j}^{m_j} (первые j показателей)."""
        G = self.group
        return self.lattice.action(G.element(list(m[:j]) + [0] * (G.r - j)))

    def _swap_term(self, j: int, i: int, a: int) -> np.ndarray:
        """z_jᵃ zᵢ = (Σ_{t<a} σ_jᵗ u_{ji}) zᵢ z_jᵃ."""
        key = (j, i, a)
        cached = self._swap_cache.get(key)
        if cached is None:
            A = self.lattice.actions[j]
            S = zeros(self.rank, self.rank)
            P = identity(self.rank)
            for _ in range(a):
                S = S + P
                P = P.dot(A)
            cached = S.dot(self.u[j][i])
            self._swap_cache[key] = cached
        return cached

    def _times_z(self, k: np.ndarray, m: list, i: int) -> np.ndarray:
        """k z^m̄ · zᵢ; m изменяется на месте, возвращается новый коэффициент."""
        for j in range(self.group.r - 1, i, -1):
            a = m[j]
            if a:
                k = k + self._prefix(m, j).dot(self._swap_term(j, i, a))
        m[i] += 1
        if m[i] == self.group.orders[i]:
            m[i] = 0
            k = k + self._prefix(m, i).dot(self.b[i])
        return k

    def times_z(self, x: ZMonomial, i: int) -> ZMonomial:
        m = list(x.zexp.exps)
        k = self._times_z(x.array(), m, i)
        return ZMonomial.of(k, GroupElement(tuple(m)))

    def multiply(self, x: ZMonomial, y: ZMonomial) -> ZMonomial:
        k = x.array() + self.lattice.act(x.zexp, y.coeff)
        m = list(x.zexp.exps)
        for i, e in enumerate(y.zexp.exps):
            for _ in range(e):
                k = self._times_z(k, m, i)
        return ZMonomial.of(k, GroupElement(tuple(m)))

    def inverse(self, x: ZMonomial) -> ZMonomial:
        G = self.group
        back = G.neg(x.zexp)
        kappa = self.multiply(x, self.zpow(back)).array()
        return ZMonomial.of(-self.lattice.act(back, kappa), back)

    def power(self, x: ZMonomial, e: int) -> ZMonomial:
        if e < 0:
            return self.power(self.inverse(x), -e)
        result = self.one()
        base = x
        while e:
            if e & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            e >>= 1
        return result

    def commutator(self, x: ZMonomial, y: ZMonomial) -> ZMonomial:
        """x y x⁻¹ y⁻¹."""
        return self.multiply(self.multiply(x, y), self.multiply(self.inverse(x), self.inverse(y)))

    def conjugate(self, x: ZMonomial, by: ZMonomial) -> ZMonomial:
        """by · x · by⁻¹."""
        return self.multiply(self.multiply(by, x), self.inverse(by))

    def to_dict(self) -> dict:
        r = self.group.r
        return {
            'label': self.label,
            'group': self.group.to_dict(),
            'field': self.model.descriptor,
            'lattice_rank': self.rank,
            'u': {f'{i + 1},{j + 1}': [int(x) for x in self.u[i][j]] for i in range(r) for j in range(r)},
            'b': [[int(x) for x in v] for v in self.b],
        }


@dataclass(frozen=True, eq=False)
class CocycleCrossedProduct:
    """Базис w_g, w_g w_h = c(g,h) w_{gh}; элементы (a, g)."""
    cocycle: Cochain

    @property
    def group(self) -> GroupSpec:
        return self.cocycle.group

    @property
    def lattice(self) -> GLattice:
        return self.cocycle.module

    def one(self) -> Tuple[np.ndarray, GroupElement]:
        e = self.group.identity
        return -self.cocycle.value(e, e), e

    def w(self, g: GroupElement):
        return zeros(self.lattice.rank), g

    def multiply(self, x, y):
        a, g = x
        b, h = y
        return a + self.lattice.act(g, b) + self.cocycle.value(g, h), self.group.add(g, h)

    def inverse(self, x):
        a, g = x
        back = self.group.neg(g)
        target = self.one()[0] - self.cocycle.value(g, back) - a
        return self.lattice.act(back, target), back

    def power(self, x, e: int):
        result = self.one()
        for _ in range(e):
            result = self.multiply(result, x)
        return result


@dataclass(frozen=True)
class ValidationReport:
    """Итог проверки представления: критические пары и условия на u, b."""
    pairs_checked: int
    antisymmetric: bool
    confluent: bool
    compatibility: Dict[str, bool]

    def to_dict(self) -> dict:
        return {
            'pairs_checked': self.pairs_checked,
            'antisymmetric': self.antisymmetric,
            'confluent': self.confluent,
            'compatibility': dict(self.compatibility),
        }
