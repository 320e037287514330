import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from groups.models import GroupSpec, Subgroup
from groups.services import enumerate_elements
from .exceptions import InternalRankMismatch
from .linalg import (
    IntegerSystem, identity, integer_matrix, invariant_factors_of_quotient,
    kernel_basis, smith_normal_form, solve_integer_system, zeros,
)
from .models import GLattice, LatticeMap

logger = logging.getLogger(__name__)

__all__ = [
    'ExactSequence', 'regular_lattice', 'augmentation_ideal', 'p2_and_a2',
    'fixed_sublattice', 'norm_map', 'trivial_lattice', 'direct_sum',
    'solve_integer_system', 'smith_normal_form', 'augmentation_index',
]


def trivial_lattice(G: GroupSpec, rank: int = 1, label: str = 'Z') -> GLattice:
    return GLattice(G, tuple(identity(rank) for _ in range(G.r)), label=label).validate()


def direct_sum(M: GLattice, N: GLattice, label: Optional[str] = None) -> GLattice:
    actions = []
    for A, B in zip(M.actions, N.actions):
        S = zeros(M.rank + N.rank, M.rank + N.rank)
        S[:M.rank, :M.rank] = A
        S[M.rank:, M.rank:] = B
        actions.append(S)
    return GLattice(M.group, tuple(actions), label=label or f'{M.label}+{N.label}')


@lru_cache(maxsize=32)
def regular_lattice(G: GroupSpec, bound: Optional[int] = None) -> GLattice:
    """ℤ[G]: базис - элементы G в порядке перечисления, единица под номером 0."""
    elements = enumerate_elements(G, bound)
    actions = []
    for i in range(G.r):
        s = G.generator(i)
        A = zeros(len(elements), len(elements))
        for h in elements:
            A[G.index(G.add(s, h)), G.index(h)] = 1
        actions.append(A)
    return GLattice(G, tuple(actions), label='Z[G]').validate()


def augmentation_index(G: GroupSpec, g) -> Optional[int]:
    """Номер базисного вектора g−1 в I[G]; для единицы None."""
    k = G.index(g)
    return None if k == 0 else k - 1


@lru_cache(maxsize=32)
def augmentation_ideal(G: GroupSpec, bound: Optional[int] = None):
    """I[G] с базисом {g−1 : g ≠ 1} и вложение в ℤ[G]."""
    elements = enumerate_elements(G, bound)
    size = len(elements) - 1
    actions = []
    for i in range(G.r):
        s = G.generator(i)
        A = zeros(size, size)
        # h·(g−1) = (hg−1) − (h−1)
        for g in elements[1:]:
            col = augmentation_index(G, g)
            target = augmentation_index(G, G.add(s, g))
            if target is not None:
                A[target, col] += 1
            A[augmentation_index(G, s), col] -= 1
        actions.append(A)
    IG = GLattice(G, tuple(actions), label='I[G]').validate()

    ZG = regular_lattice(G, bound)
    incl = zeros(len(elements), size)
    for g in elements[1:]:
        incl[G.index(g), augmentation_index(G, g)] = 1
        incl[0, augmentation_index(G, g)] = -1
    return IG, LatticeMap(incl, IG, ZG)


@dataclass(frozen=True, eq=False)
class ExactSequence:
    """0 → A₂(G) → P₂(G) → I[G] → 0."""
    group: GroupSpec
    P2: GLattice
    IG: GLattice
    j: LatticeMap
    A2: GLattice
    i: LatticeMap
    j_system: IntegerSystem
    i_system: IntegerSystem

    def p2_index(self, generator: int, g) -> int:
        """Координата вектора g·d_generator в P₂."""
        return generator * self.group.order + self.group.index(g)

    def to_a2(self, v) -> np.ndarray:
        """Координаты вектора ядра j в базисе A₂."""
        return self.i_system.solve(v)

    def lift(self, w) -> np.ndarray:
        """Некоторый прообраз w ∈ I[G] в P₂."""
        return self.j_system.solve(w)


@lru_cache(maxsize=16)
def p2_and_a2(G: GroupSpec, bound: Optional[int] = None) -> ExactSequence:
    elements = enumerate_elements(G, bound)
    order = len(elements)
    IG, _ = augmentation_ideal(G, bound)
    ZG = regular_lattice(G, bound)

    P2_actions = []
    for A in ZG.actions:
        S = zeros(G.r * order, G.r * order)
        for k in range(G.r):
            S[k * order:(k + 1) * order, k * order:(k + 1) * order] = A
        P2_actions.append(S)
    P2 = GLattice(G, tuple(P2_actions), label='P2(G)').validate()

    # j(h·d_k) = h·σ_k − h = (hσ_k − 1) − (h − 1)
    J = zeros(order - 1, G.r * order)
    for k in range(G.r):
        s = G.generator(k)
        for h in elements:
            col = k * order + G.index(h)
            target = augmentation_index(G, G.add(h, s))
            source = augmentation_index(G, h)
            if target is not None:
                J[target, col] += 1
            if source is not None:
                J[source, col] -= 1
    j = LatticeMap(J, P2, IG)
    if not j.is_equivariant():
        raise InternalRankMismatch("j не эквивариантно")
    snf = smith_normal_form(J)
    if snf.rank != order - 1 or any(d != 1 for d in snf.invariant_factors):
        raise InternalRankMismatch("j не сюръективно на I[G]")

    K = kernel_basis(J)
    expected = G.r * order - (order - 1)
    if K.shape[1] != expected:
        raise InternalRankMismatch(f"ранг A₂ равен {K.shape[1]}, ожидалось {expected}")
    i_system = IntegerSystem(K)
    A2_actions = tuple(i_system.solve_columns(A.dot(K)) for A in P2.actions)
    A2 = GLattice(G, A2_actions, label='A2(G)').validate()
    i = LatticeMap(K, A2, P2)
    if not i.is_equivariant() or not (J.dot(K) == 0).all():
        raise InternalRankMismatch("последовательность A₂ → P₂ → I[G] не точна")
    logger.info(f"[LATTICE] ({G.label()}): ранг P₂ = {P2.rank}, ранг A₂ = {A2.rank}")
    return ExactSequence(G, P2, IG, j, A2, i, IntegerSystem(J), i_system)


def fixed_sublattice(M: GLattice, H: Subgroup) -> np.ndarray:
    """Столбцы - ℤ-базис M^H."""
    rows = [M.action(h) - identity(M.rank) for h in H.generators]
    if not rows:
        return identity(M.rank)
    return kernel_basis(np.vstack(rows))


def norm_map(M: GLattice, H: Subgroup) -> LatticeMap:
    """N_H = Σ_{h∈H} A_h как отображение M → M."""
    N = zeros(M.rank, M.rank)
    for h in H.elements:
        N = N + M.action(h)
    return LatticeMap(N, M, M)


def quotient_invariants(basis, vectors):
    """Инвариантные множители span(basis) / span(vectors); vectors лежат в span(basis)."""
    basis = integer_matrix(basis)
    coords = IntegerSystem(basis).solve_columns(integer_matrix(vectors, rows=basis.shape[0]))
    return invariant_factors_of_quotient(coords, basis.shape[1])
