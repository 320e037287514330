import itertools
import logging
from functools import lru_cache
from typing import Optional

import numpy as np

from groups.exceptions import BoundExceeded
from groups.models import GroupSpec, Subgroup
from groups.services import resolve_bound, subgroup_generated, whole_group
from lattices.exceptions import InternalRankMismatch, NoSolution
from lattices.linalg import (
    IntegerSystem, identity, invariant_factors_of_quotient, kernel_with_coordinates, zeros,
)
from lattices.models import GLattice
from lattices.services import ExactSequence, augmentation_ideal, augmentation_index, fixed_sublattice, norm_map
from .exceptions import InfiniteClassOrder, NotACocycle
from .models import Cochain, CohomologyClass, CohomologyGroup, tuple_index

logger = logging.getLogger(__name__)


def _check_size(M: GLattice, n: int, H: Subgroup, bound: Optional[int]):
    limit = resolve_bound(bound, 'ACP_COCHAIN_BOUND')
    size = H.order ** (n + 1) * M.rank
    if size > limit:
        raise BoundExceeded(f"коцепи степени {n + 1} для {M.label}", size, limit)


def coboundary(f: Cochain) -> Cochain:
    """(δf)(g₁,…,g_{n+1}) = g₁f(g₂,…) + Σ(−1)ⁱ f(…,gᵢg_{i+1},…) + (−1)^{n+1} f(g₁,…,g_n)."""
    G = f.group
    M = f.module
    n = f.degree

    def value(*gs):
        total = M.action(gs[0]).dot(f.value(*gs[1:]))
        for i in range(n):
            merged = gs[:i] + (G.add(gs[i], gs[i + 1]),) + gs[i + 2:]
            total = total + (-1) ** (i + 1) * f.value(*merged)
        return total + (-1) ** (n + 1) * f.value(*gs[:n])

    return Cochain.from_function(M, n + 1, value, f.domain)


@lru_cache(maxsize=128)
def coboundary_matrix(M: GLattice, n: int, H: Subgroup) -> np.ndarray:
    """Матрица δ: Cⁿ(H, M) → C^{n+1}(H, M) в блочных координатах."""
    G = M.group
    domain = H.elements
    size = len(domain)
    position = {g: k for k, g in enumerate(domain)}
    rank = M.rank
    I = identity(rank)
    D = zeros(size ** (n + 1) * rank, size ** n * rank)
    for row, gs in enumerate(itertools.product(domain, repeat=n + 1)):
        r0 = row * rank

        def add_block(tail, block):
            c0 = tuple_index(position, size, tail) * rank
            D[r0:r0 + rank, c0:c0 + rank] += block

        add_block(gs[1:], M.action(gs[0]))
        for i in range(n):
            merged = gs[:i] + (G.add(gs[i], gs[i + 1]),) + gs[i + 2:]
            add_block(merged, (-1) ** (i + 1) * I)
        add_block(gs[:n], (-1) ** (n + 1) * I)
    return D


@lru_cache(maxsize=128)
def _coboundary_system(M: GLattice, n: int, H: Subgroup) -> IntegerSystem:
    return IntegerSystem(coboundary_matrix(M, n, H))


def cohomology_group(M: GLattice, n: int, H: Optional[Subgroup] = None, bound: Optional[int] = None) -> CohomologyGroup:
    """Hⁿ(H, M) = ker δₙ / im δₙ₋₁ через форму Смита."""
    H = H or whole_group(M.group)
    if n not in (0, 1, 2):
        raise ValueError("поддерживаются только степени 0, 1, 2")
    _check_size(M, n, H, bound)
    if n == 0:
        return CohomologyGroup(0, (), fixed_sublattice(M, H).shape[1])

    Z, coords = kernel_with_coordinates(coboundary_matrix(M, n, H))
    B = coboundary_matrix(M, n - 1, H)
    factors, free = invariant_factors_of_quotient(coords.dot(B), Z.shape[1])
    result = CohomologyGroup(n, tuple(factors), free)
    logger.debug(f"[COHOMOLOGY] H^{n}(|H|={H.order}, {M.label}) = {result.invariant_factors}, свободный ранг {free}")
    return result


def is_h1_trivial(M: GLattice, subgroups, bound: Optional[int] = None) -> bool:
    return all(cohomology_group(M, 1, H, bound).is_trivial for H in subgroups)


def _aligned(c: Cochain):
    """Подгруппа области определения c и c в её порядке элементов."""
    if len(c.domain) == c.group.order:
        H = whole_group(c.group)
    else:
        H = subgroup_generated(c.group, list(c.domain))
    if tuple(H.elements) != tuple(c.domain):
        c = restrict(c, H)
    return c, H


def class_order(c: Cochain, bound: Optional[int] = None) -> int:
    """Наименьшее k ≥ 1 с k·c ∈ im δ."""
    if not coboundary(c).is_zero():
        raise NotACocycle(f"коцепь степени {c.degree} со значениями в {c.module.label} не является коциклом")
    if c.degree == 0:
        if c.is_zero():
            return 1
        raise InfiniteClassOrder(f"класс степени 0 в {c.module.label} ненулевой, его порядок бесконечен")
    c, H = _aligned(c)
    _check_size(c.module, c.degree - 1, H, bound)
    order = _coboundary_system(c.module, c.degree - 1, H).cokernel_order(c.flat())
    if order is None:
        raise InternalRankMismatch("у коцикла конечной группы бесконечный порядок")
    return order


def coboundary_preimage(c: Cochain) -> Cochain:
    """Коцепь f с δf = c; NoSolution, если c не кограница."""
    c, H = _aligned(c)
    x = _coboundary_system(c.module, c.degree - 1, H).solve(c.flat())
    return Cochain.from_flat(c.module, c.degree - 1, x, H.elements)


def is_coboundary(c: Cochain) -> bool:
    try:
        coboundary_preimage(c)
    except NoSolution:
        return False
    return True


def restrict(c: Cochain, H: Subgroup) -> Cochain:
    return Cochain.from_function(c.module, c.degree, lambda *gs: c.value(*gs), H.elements)


def tate_h0(M: GLattice, H: Subgroup) -> CohomologyGroup:
    """Ĥ⁰(H, M) = M^H / N_H·M."""
    F = fixed_sublattice(M, H)
    if F.shape[1] == 0:
        return CohomologyGroup(0, ())
    coords = IntegerSystem(F).solve_columns(norm_map(M, H).matrix)
    factors, free = invariant_factors_of_quotient(coords, F.shape[1])
    if free:
        logger.warning(f"[COHOMOLOGY] Ĥ⁰ для {M.label} имеет свободный ранг {free}")
    return CohomologyGroup(0, tuple(factors), free)


def c1_cochain(G: GroupSpec) -> Cochain:
    """c₁(g) = g − 1 в I[G]."""
    IG, _ = augmentation_ideal(G)

    def value(g):
        v = zeros(IG.rank)
        k = augmentation_index(G, g)
        if k is not None:
            v[k] = 1
        return v

    return Cochain.from_function(IG, 1, value, whole_group(G).elements)


def connecting_h1_image(G: GroupSpec) -> CohomologyClass:
    """Класс [c₁] ∈ H¹(G, I[G]) - образ 1 ∈ H⁰(G, ℤ); проверяется, что он порождает группу."""
    c1 = c1_cochain(G)
    structure = cohomology_group(c1.module, 1)
    order = class_order(c1)
    if structure.torsion_order != G.order or order != G.order or structure.free_rank:
        raise InternalRankMismatch(
            f"[c₁] не порождает H¹(G, I[G]): группа {structure.invariant_factors}, порядок {order}"
        )
    logger.info(f"[COHOMOLOGY] [c₁] порождает H¹(G, I[G]) порядка {order}")
    return CohomologyClass(rep=c1, group_structure=structure, order=order)


def connecting_homomorphism(sequence: ExactSequence, c: Cochain) -> Cochain:
    """Поднять коцикл в I[G] до P₂, взять δ и вернуть в A₂."""
    lifted = Cochain.from_function(
        sequence.P2, c.degree, lambda *gs: sequence.lift(c.value(*gs)), c.domain,
    )
    boundary = coboundary(lifted)
    return Cochain.from_function(
        sequence.A2, c.degree + 1, lambda *gs: sequence.to_a2(boundary.value(*gs)), c.domain,
    )
