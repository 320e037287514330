import logging
import random
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from canonical.services import build_canonical, build_mstar
from cohomology.models import Cochain
from cohomology.services import class_order, coboundary, is_h1_trivial
from groups.models import GroupElement, GroupSpec
from groups.services import enumerate_subgroups, whole_group
from lattices.linalg import identity, integer_vector, is_zero, zeros
from lattices.models import GLattice
from .exceptions import Inconsistent
from .models import (
    CocycleCrossedProduct, CrossedProductPresentation, MonomialFieldModel,
    ValidationReport, ZMonomial,
)

logger = logging.getLogger(__name__)

MAX_REWRITE_STEPS = 200000

# Слово - список токенов ('z', i), ('zinv', i), ('k', вектор)
Token = Tuple[str, object]


def _k(v) -> Token:
    return ('k', tuple(int(x) for x in v))


def normal_form(P: CrossedProductPresentation, word: Sequence[Token]) -> ZMonomial:
    """Нормальная форма k·z₁^{a₁}⋯z_r^{a_r} слова, 0 ≤ aᵢ < nᵢ."""
    x = P.one()
    for kind, arg in word:
        if kind == 'z':
            x = P.times_z(x, arg)
        elif kind == 'zinv':
            x = P.multiply(x, P.inverse(P.z(arg)))
        elif kind == 'k':
            x = P.multiply(x, P.scalar(arg))
        else:
            raise ValueError(f"неизвестный токен {kind!r}")
    return x


def _redexes(P: CrossedProductPresentation, tokens: List[Token]) -> List[Tuple[int, str]]:
    found = []
    orders = P.group.orders
    for pos, (kind, arg) in enumerate(tokens):
        nxt = tokens[pos + 1] if pos + 1 < len(tokens) else None
        if kind == 'k':
            if not any(arg):
                found.append((pos, 'drop'))
            elif nxt and nxt[0] == 'k':
                found.append((pos, 'merge'))
        elif kind == 'zinv':
            found.append((pos, 'inverse'))
        elif kind == 'z':
            if nxt and nxt[0] == 'k':
                found.append((pos, 'move'))
            elif nxt and nxt[0] == 'z' and nxt[1] < arg:
                found.append((pos, 'swap'))
            n = orders[arg]
            if tokens[pos:pos + n] == [('z', arg)] * n:
                found.append((pos, 'power'))
    return found


def _apply(P: CrossedProductPresentation, tokens: List[Token], pos: int, rule: str) -> List[Token]:
    kind, arg = tokens[pos]
    if rule == 'drop':
        return tokens[:pos] + tokens[pos + 1:]
    if rule == 'merge':
        merged = integer_vector(arg) + integer_vector(tokens[pos + 1][1])
        return tokens[:pos] + [_k(merged)] + tokens[pos + 2:]
    if rule == 'inverse':
        n = P.group.orders[arg]
        return tokens[:pos] + [_k(-P.b[arg])] + [('z', arg)] * (n - 1) + tokens[pos + 1:]
    if rule == 'move':
        moved = P.lattice.actions[arg].dot(integer_vector(tokens[pos + 1][1]))
        return tokens[:pos] + [_k(moved), ('z', arg)] + tokens[pos + 2:]
    if rule == 'swap':
        i = tokens[pos + 1][1]
        return tokens[:pos] + [_k(P.u[arg][i]), ('z', i), ('z', arg)] + tokens[pos + 2:]
    if rule == 'power':
        n = P.group.orders[arg]
        return tokens[:pos] + [_k(P.b[arg])] + tokens[pos + n:]
    raise ValueError(f"неизвестное правило {rule!r}")


def _as_monomial(P: CrossedProductPresentation, tokens: List[Token]) -> ZMonomial:
    coeff = zeros(P.rank)
    exps = [0] * P.group.r
    for kind, arg in tokens:
        if kind == 'k':
            coeff = coeff + integer_vector(arg)
        else:
            exps[arg] += 1
    return ZMonomial.of(coeff, GroupElement(tuple(exps)))


def reduce_word(P: CrossedProductPresentation, word: Sequence[Token],
                strategy: str = 'leftmost', seed: Optional[int] = None) -> ZMonomial:
    """Переписывание по правилам представления до неприводимого слова."""
    rng = random.Random(seed)
    tokens = [(kind, tuple(int(x) for x in arg) if kind == 'k' else arg) for kind, arg in word]
    for _ in range(MAX_REWRITE_STEPS):
        found = _redexes(P, tokens)
        if not found:
            return _as_monomial(P, tokens)
        pos, rule = found[0] if strategy == 'leftmost' else rng.choice(found)
        tokens = _apply(P, tokens, pos, rule)
    raise Inconsistent(f"переписывание не завершилось за {MAX_REWRITE_STEPS} шагов")


def _critical_words(P: CrossedProductPresentation) -> List[List[Token]]:
    G = P.group
    r = G.r
    basis = [_k(identity(P.rank)[:, t]) for t in range(P.rank)]
    words = []
    for i in range(r):
        zi = ('z', i)
        words.append([zi] * (G.orders[i] + 1))
        for e in basis:
            words.append([zi, e, e])
            words.append([zi] * G.orders[i] + [e])
        for j in range(i + 1, r):
            zj = ('z', j)
            words.append([zj] + [zi] * G.orders[i])
            words.append([zj] * G.orders[j] + [zi])
            for e in basis:
                words.append([zj, zi, e])
            for k in range(j + 1, r):
                words.append([('z', k), zj, zi])
    return words


def compatibility_conditions(P: CrossedProductPresentation) -> dict:
    """σᵢ(bᵢ) = bᵢ и (σᵢ − 1)bⱼ = Nⱼ(uᵢⱼ) для i ≠ j."""
    G = P.group
    M = P.lattice
    fixed = all((M.actions[i].dot(P.b[i]) == P.b[i]).all() for i in range(G.r))
    norms = True
    for j in range(G.r):
        N = zeros(P.rank, P.rank)
        power = identity(P.rank)
        for _ in range(G.orders[j]):
            N = N + power
            power = power.dot(M.actions[j])
        for i in range(G.r):
            if i != j and not (M.actions[i].dot(P.b[j]) - P.b[j] == N.dot(P.u[i][j])).all():
                norms = False
    return {'b_fixed': fixed, 'norm_condition': norms}


def validate_presentation(P: CrossedProductPresentation) -> ValidationReport:
    """Антисимметрия u и сходимость всех критических пар."""
    r = P.group.r
    for i in range(r):
        if not is_zero(P.u[i][i]):
            raise Inconsistent(f"u{i + 1}{i + 1} ≠ 0", pair=(('z', i), ('z', i)))
        for j in range(i + 1, r):
            if not is_zero(P.u[i][j] + P.u[j][i]):
                raise Inconsistent(f"u{i + 1}{j + 1} + u{j + 1}{i + 1} ≠ 0", pair=(('z', i), ('z', j)))

    words = _critical_words(P)
    for word in words:
        forms = set()
        for pos, rule in _redexes(P, word):
            forms.add(reduce_word(P, _apply(P, word, pos, rule)))
        if len(forms) > 1:
            shown = ' '.join(f'{kind}{arg if kind != "k" else ""}' for kind, arg in word)
            logger.warning(f"[CROSSED] Критическая пара {shown} даёт {len(forms)} нормальные формы")
            raise Inconsistent(f"критическая пара {shown} не сходится", pair=(word, sorted(forms, key=str)))
    report = ValidationReport(
        pairs_checked=len(words), antisymmetric=True, confluent=True,
        compatibility=compatibility_conditions(P),
    )
    logger.info(f"[CROSSED] {P.label}: проверено критических слов {len(words)}")
    return report


def commutator_u(P: CrossedProductPresentation, m: GroupElement, n: GroupElement) -> np.ndarray:
    """u_{m̄,n̄} = z^m̄ z^n̄ (z^m̄)⁻¹ (z^n̄)⁻¹."""
    c = P.commutator(P.zpow(m), P.zpow(n))
    if not c.is_scalar:
        raise Inconsistent(f"коммутатор z^{m} и z^{n} имеет z-показатель {c.zexp}")
    return c.array()


def cocycle_of(P: CrossedProductPresentation) -> Cochain:
    """c(g, h) = z^g z^h (z^{g+h})⁻¹."""
    domain = whole_group(P.group).elements
    c = Cochain.from_function(P.lattice, 2, lambda g, h: P.multiply(P.zpow(g), P.zpow(h)).coeff, domain)
    if not coboundary(c).is_zero():
        raise Inconsistent(f"{P.label}: таблица c(g,h) не является 2-коциклом")
    return c


def brauer_class_order(P: CrossedProductPresentation, bound: Optional[int] = None) -> int:
    return class_order(cocycle_of(P), bound)


def brauer_class_report(P: CrossedProductPresentation, bound: Optional[int] = None) -> dict:
    """Порядок класса и его смысл: экспонента алгебры при H¹-тривиальной решётке."""
    order = brauer_class_order(P, bound)
    h1_trivial = is_h1_trivial(P.lattice, enumerate_subgroups(P.group), bound)
    return {
        'order': order,
        'h1_trivial': h1_trivial,
        'interpretation': 'algebra_exponent' if h1_trivial else 'lattice_class_order_only',
        'provenance': 'crossedproducts.brauer_class_order',
    }


def presentation_from_cocycle(c: Cochain, descriptor: str = '', label: str = '') -> CrossedProductPresentation:
    """vᵢⱼ = wᵢwⱼwᵢ⁻¹wⱼ⁻¹ и dᵢ = wᵢ^{nᵢ} в алгебре с базисом w_g."""
    A = CocycleCrossedProduct(c)
    G = c.group
    e = G.identity
    shift = c.value(e, e)
    w = [A.w(G.generator(i)) for i in range(G.r)]

    def scalar(x):
        a, g = x
        if not g.is_identity:
            raise Inconsistent(f"ожидался скаляр, получен элемент степени {g}")
        return a + shift

    v = tuple(
        tuple(
            scalar(A.multiply(A.multiply(w[i], w[j]), A.multiply(A.inverse(w[i]), A.inverse(w[j]))))
            for j in range(G.r)
        )
        for i in range(G.r)
    )
    d = tuple(scalar(A.power(w[i], G.orders[i])) for i in range(G.r))
    model = MonomialFieldModel(c.module, descriptor or f'F({c.module.label})')
    return CrossedProductPresentation(G, model, v, d, label=label or f'cocycle/{c.module.label}')


def rebase(P: CrossedProductPresentation, k: Sequence) -> CrossedProductPresentation:
    """Замена образующих zᵢ ↦ kᵢ zᵢ."""
    G = P.group
    M = P.lattice
    k = [integer_vector(v) for v in k]
    I = identity(P.rank)
    u = tuple(
        tuple(P.u[i][j] + (M.actions[i] - I).dot(k[j]) - (M.actions[j] - I).dot(k[i]) for j in range(G.r))
        for i in range(G.r)
    )
    b = []
    for i in range(G.r):
        total = zeros(P.rank)
        power = I
        for _ in range(G.orders[i]):
            total = total + power.dot(k[i])
            power = power.dot(M.actions[i])
        b.append(P.b[i] + total)
    return CrossedProductPresentation(G, P.model, u, tuple(b), label=f'{P.label}*')


def trivial_presentation(M: GLattice, descriptor: str = '') -> CrossedProductPresentation:
    """u = 0, b = 0: расщепимая алгебра."""
    G = M.group
    zero = zeros(M.rank)
    u = tuple(tuple(zero for _ in range(G.r)) for _ in range(G.r))
    b = tuple(zero for _ in range(G.r))
    return CrossedProductPresentation(G, MonomialFieldModel(M, descriptor or f'F({M.label})'), u, b, label='split')


@lru_cache(maxsize=16)
def delta_prime(G: GroupSpec, bound: Optional[int] = None) -> CrossedProductPresentation:
    """Δ′(G) над F(A₂(G))."""
    data = build_canonical(G, bound)
    model = MonomialFieldModel(data.A2, f'F(A2({G.label()}))')
    return CrossedProductPresentation(G, model, data.u, data.b, label=f"Delta'({G.label()})")


@lru_cache(maxsize=16)
def delta(G: GroupSpec, bound: Optional[int] = None) -> CrossedProductPresentation:
    """Δ(G): те же u, b над F(M*)."""
    data = build_canonical(G, bound)
    T = build_mstar(G, bound=bound)
    model = MonomialFieldModel(T.underlying, f'F(M*({G.label()}))')
    u = tuple(tuple(T.include_a2(v) for v in row) for row in data.u)
    b = tuple(T.include_a2(v) for v in data.b)
    return CrossedProductPresentation(G, model, u, b, label=f'Delta({G.label()})')


def build_model(G: GroupSpec, model: str, bound: Optional[int] = None) -> CrossedProductPresentation:
    if model == 'a2':
        return delta_prime(G, bound)
    if model == 'mstar':
        return delta(G, bound)
    raise ValueError(f"неизвестная модель {model!r}")
