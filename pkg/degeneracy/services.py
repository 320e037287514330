import itertools
import logging
from typing import Optional

import numpy as np

from crossedproducts.models import CrossedProductPresentation, ZMonomial
from crossedproducts.services import commutator_u
from groups.models import GroupElement
from groups.services import element_order, elements_of_order, enumerate_elements, subgroup_generated
from lattices.exceptions import NoSolution
from lattices.linalg import IntegerSystem, identity, rank_mod_p, zeros
from .exceptions import DecompositionFailure, NotAWitness
from .models import NO_MONOMIAL_WITNESS, YES, DegeneracyVerdict, DegeneracyWitness, StrongWitness

logger = logging.getLogger(__name__)


def _shifted(P: CrossedProductPresentation, g: GroupElement) -> np.ndarray:
    """A_g − I."""
    return P.lattice.action(g) - identity(P.rank)


def verify_degenerate_witness(P: CrossedProductPresentation, w: DegeneracyWitness) -> bool:
    G = P.group
    if subgroup_generated(G, [w.m, w.n]).is_cyclic:
        return False
    lhs = _shifted(P, w.m).dot(w.a) + _shifted(P, w.n).dot(w.b)
    return bool((lhs == commutator_u(P, w.m, w.n)).all())


def verify_strong_witness(P: CrossedProductPresentation, w: StrongWitness) -> bool:
    G = P.group
    if w.m.is_identity or element_order(G, w.m) != G.p:
        return False
    Am = _shifted(P, w.m)
    for i in range(G.r):
        lhs = Am.dot(w.k[i]) + (P.lattice.actions[i] - identity(P.rank)).dot(w.l)
        if not (lhs == commutator_u(P, G.generator(i), w.m)).all():
            return False
    return True


def mod_p_obstruction(P: CrossedProductPresentation, m: GroupElement, n: GroupElement) -> bool:
    """u_{m,n} не лежит в образе (A_m − I | A_n − I) уже по модулю p.

    Тогда целочисленного свидетеля на паре нет.
    """
    B = np.hstack([_shifted(P, m), _shifted(P, n)])
    u = commutator_u(P, m, n).reshape(-1, 1)
    p = P.group.p
    return rank_mod_p(np.hstack([B, u]), p) > rank_mod_p(B, p)


def noncyclic_pairs(G, bound: Optional[int] = None):
    elements = enumerate_elements(G, bound)[1:]
    return [
        (m, n) for m, n in itertools.combinations(elements, 2)
        if not subgroup_generated(G, [m, n]).is_cyclic
    ]


def is_degenerate(P: CrossedProductPresentation, bound: Optional[int] = None) -> DegeneracyVerdict:
    """Первая пара с нециклической ⟨σ^m̄, σ^n̄⟩ и мономиальным свидетелем.

    Образ (A_m̄ − I | A_n̄ − I) равен I_H·M для H = ⟨σ^m̄, σ^n̄⟩, поэтому
    принадлежность проверяется один раз на подгруппу.
    """
    G = P.group
    elements = enumerate_elements(G, bound)[1:]
    membership = {}
    examined = 0
    for m, n in itertools.combinations(elements, 2):
        H = subgroup_generated(G, [m, n])
        if H.is_cyclic:
            continue
        examined += 1
        u = commutator_u(P, m, n)
        system = membership.get(H.key)
        if system is None:
            system = IntegerSystem(np.hstack([_shifted(P, h) for h in H.generators]))
            membership[H.key] = system
        if not system.contains(u):
            logger.debug(f"[DEGENERACY] u_{{{m},{n}}} ∉ I_H·M, |H| = {H.order}")
            continue
        x = IntegerSystem(np.hstack([_shifted(P, m), _shifted(P, n)])).solve(u)
        witness = DegeneracyWitness(m, n, x[:P.rank], x[P.rank:])
        if not verify_degenerate_witness(P, witness):
            raise NotAWitness(f"найденный свидетель для пары {m}, {n} не прошёл подстановку")
        logger.info(f"[DEGENERACY] {P.label}: вырождена на паре {m}, {n} после {examined} пар")
        return DegeneracyVerdict('degenerate', YES, witness, examined)
    logger.info(f"[DEGENERACY] {P.label}: мономиального свидетеля нет, пар {examined}, подгрупп {len(membership)}")
    return DegeneracyVerdict('degenerate', NO_MONOMIAL_WITNESS, None, examined)


def is_strongly_degenerate(P: CrossedProductPresentation, bound: Optional[int] = None) -> DegeneracyVerdict:
    """Для σ^m̄ порядка p: (A_m̄ − I)kᵢ + (Aᵢ − I)l = u_{i,m̄} при общем l."""
    G = P.group
    rank = P.rank
    examined = 0
    for m in elements_of_order(G, G.p, bound):
        examined += 1
        Am = _shifted(P, m)
        system = zeros(G.r * rank, (G.r + 1) * rank)
        rhs = zeros(G.r * rank)
        for i in range(G.r):
            rows = slice(i * rank, (i + 1) * rank)
            system[rows, i * rank:(i + 1) * rank] = Am
            system[rows, G.r * rank:] = P.lattice.actions[i] - identity(rank)
            rhs[rows] = commutator_u(P, G.generator(i), m)
        try:
            x = IntegerSystem(system).solve(rhs)
        except NoSolution:
            logger.debug(f"[DEGENERACY] σ^{m}: совместной системы нет")
            continue
        witness = StrongWitness(m, x[G.r * rank:], tuple(x[i * rank:(i + 1) * rank] for i in range(G.r)))
        if not verify_strong_witness(P, witness):
            raise NotAWitness(f"сильный свидетель для {m} не прошёл подстановку")
        logger.info(f"[DEGENERACY] {P.label}: сильно вырождена, σ^{m}")
        return DegeneracyVerdict('strongly_degenerate', YES, witness, examined)
    logger.info(f"[DEGENERACY] {P.label}: сильного мономиального свидетеля нет, элементов {examined}")
    return DegeneracyVerdict('strongly_degenerate', NO_MONOMIAL_WITNESS, None, examined)


def _cyclic(G, g):
    return {G.scale(k, g) for k in range(element_order(G, g))}


def _decomposition(G, g, h):
    """(c₁, d₁, c₂, d₂) с ⟨g, h⟩ = ⟨c₁g + d₁h⟩ ⊕ ⟨c₂g + d₂h⟩."""
    H = subgroup_generated(G, [g, h])
    og, oh = element_order(G, g), element_order(G, h)

    def splits(c1, d1, c2, d2):
        t1 = G.add(G.scale(c1, g), G.scale(d1, h))
        t2 = G.add(G.scale(c2, g), G.scale(d2, h))
        if element_order(G, t1) * element_order(G, t2) != H.order:
            return None
        if _cyclic(G, t1) & _cyclic(G, t2) != {G.identity}:
            return None
        return t1, t2

    found = splits(1, 0, 0, 1)
    if found:
        return (1, 0, 0, 1), found
    for c1, d1, c2, d2 in itertools.product(range(og), range(oh), range(og), range(oh)):
        found = splits(c1, d1, c2, d2)
        if found:
            return (c1, d1, c2, d2), found
    raise DecompositionFailure(f"⟨{g}, {h}⟩ не раскладывается в сумму двух циклических")


def reduce_witness_to_order_p(P: CrossedProductPresentation, w: DegeneracyWitness) -> DegeneracyWitness:
    """Свидетель на паре элементов порядка p через степени b·z^m̄ и a⁻¹·z^n̄."""
    if not verify_degenerate_witness(P, w):
        raise NotAWitness(f"пара {w.m}, {w.n} не является свидетелем")
    G = P.group
    (c1, d1, c2, d2), (t1, t2) = _decomposition(G, w.m, w.n)
    X = ZMonomial.of(w.b, w.m)
    Y = ZMonomial.of(-w.a, w.n)

    def reduced(c, d, tau):
        base = P.multiply(P.power(X, c), P.power(Y, d))
        return P.power(base, element_order(G, tau) // G.p)

    X1 = reduced(c1, d1, t1)
    X2 = reduced(c2, d2, t2)
    result = DegeneracyWitness(X1.zexp, X2.zexp, -X2.array(), X1.array())
    if not verify_degenerate_witness(P, result):
        raise NotAWitness(f"свидетель порядка p на паре {X1.zexp}, {X2.zexp} не прошёл подстановку")
    logger.debug(f"[DEGENERACY] Свидетель сведён к паре {result.m}, {result.n}")
    return result


def centralizer_split_hint(P: CrossedProductPresentation, w: DegeneracyWitness) -> dict:
    """b·z^m̄ и a⁻¹·z^n̄ коммутируют."""
    if not verify_degenerate_witness(P, w):
        raise NotAWitness(f"пара {w.m}, {w.n} не является свидетелем")
    X = ZMonomial.of(w.b, w.m)
    Y = ZMonomial.of(-w.a, w.n)
    commute = P.commutator(X, Y) == P.one()
    return {
        'commute': commute,
        'annotation': f'fixed field K′ of ⟨σ^m, σ^n⟩ has [K:K′] = {P.group.p ** 2} (cited, not computed)',
    }


def strong_witness_central_power(P: CrossedProductPresentation, w: StrongWitness) -> dict:
    """(l⁻¹·z^m̄)^p - скаляр, неподвижный под G, то есть центральный элемент."""
    if not verify_strong_witness(P, w):
        raise NotAWitness(f"σ^{w.m}: сильный свидетель не прошёл подстановку")
    omega = ZMonomial.of(-w.l, w.m)
    power = P.power(omega, P.group.p)
    central = power.is_scalar and all(
        P.conjugate(power, P.z(i)) == power for i in range(P.group.r)
    )
    return {'power': power.to_dict(), 'central': central}


def elementary_subgroup_hint(P: CrossedProductPresentation, w: StrongWitness) -> Optional[dict]:
    """Для p = 2: наименьшая пара i < j с |⟨σᵢ^{nᵢ/2}, σⱼ^{nⱼ/2}, σ^m̄⟩| = 8."""
    G = P.group
    if G.p != 2:
        return None
    for i, j in itertools.combinations(range(G.r), 2):
        gens = [
            G.scale(G.orders[i] // 2, G.generator(i)),
            G.scale(G.orders[j] // 2, G.generator(j)),
            w.m,
        ]
        H = subgroup_generated(G, gens)
        if H.order == 8:
            return {'pair': [i + 1, j + 1], 'generators': [str(g) for g in gens], 'order': 8}
    return None
