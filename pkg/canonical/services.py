import logging
from functools import lru_cache
from typing import Optional

import numpy as np

from cohomology.models import Cochain
from cohomology.services import c1_cochain, class_order, coboundary, restrict
from groups.models import GroupSpec
from groups.services import enumerate_elements, subgroup_generated, whole_group
from lattices.exceptions import GroupLawViolation, NoSolution
from lattices.linalg import zeros
from lattices.models import GLattice, LatticeMap
from lattices.services import augmentation_index, p2_and_a2
from .exceptions import NotInKernel, TelescopeFailure
from .models import CanonicalData, TwistedLattice

logger = logging.getLogger(__name__)


def _phi_vector(G: GroupSpec, seq, g) -> np.ndarray:
    """φ(σ^m̄) = Σₖ Σ_{j<mₖ} σ₁^{m₁}⋯σ_{k−1}^{m_{k−1}} σₖʲ dₖ."""
    v = zeros(seq.P2.rank)
    for k in reversed(range(G.r)):
        prefix = list(g.exps[:k])
        for j in range(g.exps[k]):
            h = G.element(prefix + [j] + [0] * (G.r - k - 1))
            v[seq.p2_index(k, h)] += 1
    return v


def build_phi(G: GroupSpec, bound: Optional[int] = None) -> Cochain:
    """1-коцепь φ: G → P₂(G) с j∘φ = c₁."""
    seq = p2_and_a2(G, bound)
    elements = enumerate_elements(G, bound)
    phi = Cochain.from_function(seq.P2, 1, lambda g: _phi_vector(G, seq, g), elements)
    c1 = c1_cochain(G)
    for g in elements:
        if not (seq.j(phi.value(g)) == c1.value(g)).all():
            raise TelescopeFailure(f"j(φ({g})) ≠ {g} − 1")
    return phi


def _to_a2(seq, v, what: str) -> np.ndarray:
    try:
        return seq.to_a2(v)
    except NoSolution as exc:
        raise NotInKernel(f"{what} не лежит в A₂") from exc


def build_c2(G: GroupSpec, phi: Optional[Cochain] = None, bound: Optional[int] = None) -> Cochain:
    """c₂ = δφ в координатах A₂."""
    seq = p2_and_a2(G, bound)
    phi = phi if phi is not None else build_phi(G, bound)
    dphi = coboundary(phi)
    c2 = Cochain.from_function(
        seq.A2, 2, lambda g, h: _to_a2(seq, dphi.value(g, h), f"δφ({g},{h})"), phi.domain,
    )
    if not coboundary(c2).is_zero():
        raise NotInKernel("δc₂ ≠ 0")
    return c2


def build_u_b(G: GroupSpec, bound: Optional[int] = None):
    """uᵢⱼ = (σᵢ−1)dⱼ − (σⱼ−1)dᵢ и bᵢ = Σ_t σᵢᵗ dᵢ в координатах A₂."""
    seq = p2_and_a2(G, bound)
    e = G.identity

    def u_vector(i, j):
        v = zeros(seq.P2.rank)
        v[seq.p2_index(j, G.generator(i))] += 1
        v[seq.p2_index(j, e)] -= 1
        v[seq.p2_index(i, G.generator(j))] -= 1
        v[seq.p2_index(i, e)] += 1
        return _to_a2(seq, v, f"u{i + 1}{j + 1}")

    def b_vector(i):
        v = zeros(seq.P2.rank)
        for t in range(G.orders[i]):
            v[seq.p2_index(i, G.scale(t, G.generator(i)))] += 1
        return _to_a2(seq, v, f"b{i + 1}")

    u = tuple(tuple(u_vector(i, j) for j in range(G.r)) for i in range(G.r))
    b = tuple(b_vector(i) for i in range(G.r))
    return u, b


@lru_cache(maxsize=16)
def build_canonical(G: GroupSpec, bound: Optional[int] = None) -> CanonicalData:
    seq = p2_and_a2(G, bound)
    phi = build_phi(G, bound)
    c2 = build_c2(G, phi, bound)
    u, b = build_u_b(G, bound)
    logger.info(f"[CANONICAL] ({G.label()}): φ, c₂, u, b построены, ранг A₂ = {seq.A2.rank}")
    return CanonicalData(group=G, sequence=seq, phi=phi, c2=c2, u=u, b=b)


@lru_cache(maxsize=16)
def build_mstar(G: GroupSpec, p: Optional[int] = None, twisted: bool = True,
                bound: Optional[int] = None) -> TwistedLattice:
    """M*_{p[c₂]}(G); при twisted=False - прямая сумма A₂ ⊕ I[G]."""
    p = G.p if p is None else p
    data = build_canonical(G, bound)
    A2, IG = data.A2, data.IG
    ra, ri = A2.rank, IG.rank
    elements = enumerate_elements(G, bound)
    actions = []
    for i in range(G.r):
        s = G.generator(i)
        S = zeros(ra + ri, ra + ri)
        S[:ra, :ra] = A2.actions[i]
        S[ra:, ra:] = IG.actions[i]
        if twisted:
            # σᵢ(0, g′−1) = (p·c₂(σᵢ, g′), σᵢ(g′−1))
            for g in elements[1:]:
                S[:ra, ra + augmentation_index(G, g)] = p * data.c2.value(s, g)
        actions.append(S)
    label = f'M*_{p}[c2]({G.label()})' if twisted else f'A2+I[G]({G.label()})'
    M = GLattice(G, tuple(actions), label=label)
    try:
        M.validate()
    except GroupLawViolation:
        logger.error(f"[CANONICAL] Действие на {label} нарушает групповой закон")
        raise
    return TwistedLattice(underlying=M, split=(ra, ri), c2_ref=data.c2, p=p, twisted=twisted)


def c2_in_mstar(T: TwistedLattice) -> Cochain:
    """c₂ как коцикл со значениями в A₂-компоненте M*."""
    c2 = T.c2_ref
    return Cochain.from_function(T.underlying, 2, lambda g, h: T.include_a2(c2.value(g, h)), c2.domain)


def mstar_embedding(G: GroupSpec, bound: Optional[int] = None) -> LatticeMap:
    """θ: M* → P₂, (a, Σ ξ_g (g−1)) ↦ a + p·Σ ξ_g φ(g); образ равен j⁻¹(p·I[G])."""
    T = build_mstar(G, bound=bound)
    data = build_canonical(G, bound)
    seq = data.sequence
    theta = zeros(seq.P2.rank, T.rank)
    theta[:, :T.split[0]] = seq.i.matrix
    for g in enumerate_elements(G, bound)[1:]:
        theta[:, T.split[0] + augmentation_index(G, g)] = T.p * data.phi.value(g)
    embedding = LatticeMap(theta, T.underlying, seq.P2)
    if not embedding.is_equivariant():
        raise GroupLawViolation("θ: M* → P₂ не эквивариантно")
    return embedding


def mstar_trivializing_cochain(T: TwistedLattice) -> Cochain:
    """ψ(g) = (0, g − 1) с δψ = p·c₂ в M*."""
    G = T.underlying.group

    def value(g):
        v = T.underlying.zero()
        k = augmentation_index(G, g)
        if k is not None:
            v[T.split[0] + k] = 1
        return v

    return Cochain.from_function(T.underlying, 1, value, whole_group(G).elements)


def mstar_class_order(T: TwistedLattice, bound: Optional[int] = None) -> int:
    """Порядок [c₂] в H²(G, M*) без решения системы на всей группе.

    p·c₂ = δψ даёт порядок, делящий p; нетривиальное ограничение на ⟨σᵢ⟩
    даёт ровно p. Если ни одно ограничение не помогает, считается полностью.
    """
    G = T.underlying.group
    c = c2_in_mstar(T)
    if not ((T.p * c).values == coboundary(mstar_trivializing_cochain(T)).values).all():
        logger.warning(f"[CANONICAL] {T.underlying.label}: p·c₂ ≠ δψ, считаем порядок полностью")
        return class_order(c, bound)
    for i in range(G.r):
        H = subgroup_generated(G, [G.generator(i)])
        if class_order(restrict(c, H), bound) > 1:
            logger.info(f"[CANONICAL] {T.underlying.label}: [c₂] нетривиален на ⟨σ{i + 1}⟩, порядок {T.p}")
            return T.p
    return class_order(c, bound)
