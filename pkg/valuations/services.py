import logging
from fractions import Fraction
from math import lcm
from typing import Optional

import numpy as np

from cohomology.services import cohomology_group
from crossedproducts.models import ZMonomial
from groups.services import elements_of_order, enumerate_elements, subgroup_generated
from lattices.exceptions import NoSolution
from lattices.linalg import (
    IntegerSystem, hermite_normal_form, identity, integer_matrix, smith_normal_form, zeros,
)
from .exceptions import LengthMismatch
from .models import GradedSearchResult, PowerSeriesACP, ValueData, ValueVector

logger = logging.getLogger(__name__)


def compare_lex(a: ValueVector, b: ValueVector) -> int:
    """−1, 0, 1; решает последняя различающаяся координата."""
    if len(a.coords) != len(b.coords):
        raise LengthMismatch(f"длины {len(a.coords)} и {len(b.coords)}")
    return (a > b) - (a < b)


def monomial_value(A: PowerSeriesACP, x: ZMonomial) -> ValueVector:
    """v(k·z^m̄): x-блок k плюс Σ mᵢ v(zᵢ); мономы K имеют значение 0."""
    r = A.group.r
    coords = [Fraction(int(c)) for c in x.coeff[-r:]]
    for i, e in enumerate(x.zexp.exps):
        for j, c in enumerate(A.z_value(i).coords):
            coords[j] += e * c
    return ValueVector(tuple(coords))


def value_data(A: PowerSeriesACP) -> ValueData:
    """Γ_D = ℤʳ + Σ ℤ·v(zᵢ), инварианты Γ_D/Γ_F и таблица θ_D."""
    G = A.group
    r = G.r
    L = lcm(*G.orders)
    gens = [A.z_value(i) for i in range(r)]
    # Всё умножено на L, чтобы работать в ℤʳ
    columns = [L * identity(r)[:, j] for j in range(r)]
    columns += [np.array([int(c * L) for c in v.coords], dtype=object) for v in gens]
    C = integer_matrix(np.stack(columns, axis=1))
    B = hermite_normal_form(C.T).T
    X = IntegerSystem(B).solve_columns(L * identity(r))
    quotient = tuple(d for d in smith_normal_form(X).invariant_factors if d != 1)

    theta = {}
    for g in enumerate_elements(G):
        coset = str(monomial_value(A, A.presentation.zpow(g)).fractional())
        theta.setdefault(coset, g)
    expected = sorted(n for n in G.orders if n != 1)
    isomorphic = sorted(quotient) == expected and len(theta) == G.order
    if not isomorphic:
        logger.warning(f"[VALUATION] {A.label}: Γ_D/Γ_F = {quotient}, а группа ({G.label()})")
    logger.info(f"[VALUATION] {A.label}: Γ_D/Γ_F = {quotient}")
    return ValueData(tuple(gens), quotient, theta, isomorphic)


def residue_degree(A: PowerSeriesACP) -> int:
    """Число различных матриц действия: степень K̄ над F̄ в мономиальной модели."""
    M = A.base.lattice
    seen = {tuple(map(tuple, M.action(g).tolist())) for g in enumerate_elements(A.group)}
    return len(seen)


def is_semi_ramified(A: PowerSeriesACP) -> bool:
    G = A.group
    return value_data(A).index == G.order and residue_degree(A) == G.order


def semi_ramification_report(A: PowerSeriesACP) -> dict:
    G = A.group
    data = value_data(A)
    f = residue_degree(A)
    return {
        'index': data.index,
        'residue_degree': f,
        'semi_ramified': data.index == G.order and f == G.order,
        'defectless': data.index * f == G.order ** 2,
        'separable': 'model property: residue extension of the monomial model is Galois',
        'value_data': data.to_dict(),
    }


def _norm_matrix(P, m) -> np.ndarray:
    """N_m̄ = Σ_{t<p} A_m̄ᵗ."""
    A = P.lattice.action(m)
    total = zeros(P.rank, P.rank)
    power = identity(P.rank)
    for _ in range(P.group.p):
        total = total + power
        power = power.dot(A)
    return total


def equivalence_certified(A: PowerSeriesACP) -> bool:
    """H¹(⟨σ^m̄⟩, M) = 0 для всех σ^m̄ порядка p: решение поиска поднимается до сильного свидетеля."""
    G = A.group
    M = A.base.lattice
    for m in elements_of_order(G, G.p):
        if not cohomology_group(M, 1, subgroup_generated(G, [m])).is_trivial:
            return False
    return True


def _certificate(P, omega: ZMonomial) -> bool:
    power = P.power(omega, P.group.p)
    if not power.is_scalar:
        return False
    return all(P.conjugate(power, P.z(i)) == power for i in range(P.group.r))


def homogeneous_ppower_central_search(A: PowerSeriesACP, bound: Optional[int] = None) -> GradedSearchResult:
    """Первое σ^m̄ порядка p, для которого (k·x^λ·z^m̄)^p централен.

    (ℓ z^m̄)^p = (N_m̄ ℓ + c_m̄)·1, где c_m̄ - коэффициент (z^m̄)^p. Центральность
    скаляра: (Aᵢ − I)(N_m̄ ℓ + c_m̄) = 0 для всех i.
    """
    P = A.presentation
    G = A.group
    rank = P.rank
    base_rank = A.base.rank
    certified = equivalence_certified(A)
    examined = 0
    for m in elements_of_order(G, G.p, bound):
        examined += 1
        c = P.power(P.zpow(m), G.p).array()
        N = _norm_matrix(P, m)
        shifted = [P.lattice.actions[i] - identity(rank) for i in range(G.r)]
        system = np.vstack([S.dot(N) for S in shifted])
        rhs = np.concatenate([-S.dot(c) for S in shifted])
        try:
            ell = IntegerSystem(system).solve(rhs)
        except NoSolution:
            logger.debug(f"[VALUATION] σ^{m}: центральной p-й степени нет")
            continue
        omega = ZMonomial.of(ell, m)
        if not _certificate(P, omega):
            logger.error(f"[VALUATION] {A.label}: решение для σ^{m} не прошло проверку центральности")
            continue
        degree = monomial_value(A, omega)
        if degree.is_integral:
            logger.warning(f"[VALUATION] {A.label}: степень {degree} лежит в Γ_F, элемент отброшен")
            continue
        logger.info(f"[VALUATION] {A.label}: однородный элемент степени {degree} над σ^{m}")
        return GradedSearchResult(
            True, m, ell[:base_rank], ell[base_rank:], degree, certified, examined,
        )
    logger.info(f"[VALUATION] {A.label}: однородных p-центральных элементов нет, проверено {examined}")
    return GradedSearchResult(False, certified=certified, examined=examined)
