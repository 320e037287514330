"""Критерии приёмки: каждый возвращает словарь с итогом и списком проверок."""
import difflib
import itertools
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
from django.conf import settings

from canonical.services import build_canonical
from chow.exceptions import ContradictionDetected
from chow.models import CYCLIC_OF_ORDER_P, TORSION_FREE
from chow.services import (
    ch2_torsion_verdict, generator_x, generator_y, tadic_degree, transfer_identity_check,
)
from cohomology.models import Cochain
from cohomology.services import (
    class_order, coboundary_matrix, cohomology_group, is_h1_trivial, tate_h0,
)
from crossedproducts.services import (
    commutator_u, delta, delta_prime, presentation_from_cocycle, rebase, trivial_presentation,
)
from degeneracy.models import NO_MONOMIAL_WITNESS
from degeneracy.services import (
    is_degenerate, is_strongly_degenerate, mod_p_obstruction, noncyclic_pairs, verify_degenerate_witness,
)
from groups.exceptions import AlgebraError
from groups.models import GroupSpec
from groups.services import enumerate_elements, enumerate_subgroups, whole_group
from lattices.exceptions import NoSolution
from lattices.linalg import identity, integer_matrix, kernel_basis, solve_integer_system, zeros
from lattices.models import GLattice
from lattices.services import augmentation_ideal, direct_sum, regular_lattice, trivial_lattice
from valuations.models import PowerSeriesACP
from valuations.services import homogeneous_ppower_central_search, is_semi_ramified, value_data
from .services import analyze, render_json

logger = logging.getLogger(__name__)

SMALL = [GroupSpec(2, (2, 2)), GroupSpec(2, (2, 4)), GroupSpec(3, (3, 3))]
RANK_THREE = GroupSpec(2, (2, 2, 2))
KLEIN = GroupSpec(2, (2, 2))
CYCLIC4 = GroupSpec(2, (4,))
# Все Δ(G), Δ′(G) с |G| ≤ 16 в режиме full
EQUIVALENCE_GROUPS = {
    'fast': SMALL,
    'full': SMALL + [
        GroupSpec(2, (4, 4)), GroupSpec(2, (2, 8)), RANK_THREE,
        GroupSpec(2, (2, 2, 4)), GroupSpec(2, (2, 2, 2, 2)),
    ],
}
GOLDEN_INPUTS = {
    'fast': [(2, (2, 2), 'a2'), (2, (2, 2), 'mstar'), (3, (3, 3), 'mstar')],
    'full': [(2, (2, 2), 'a2'), (2, (2, 2), 'mstar'), (3, (3, 3), 'mstar'), (2, (2, 2, 2), 'mstar')],
}
THREAD_COUNTS = (1, 4)


class Checks:
    """Накопитель проверок одного критерия."""

    def __init__(self, name):
        self.name = name
        self.items = []

    def check(self, what: str, ok, detail=None):
        ok = bool(ok)
        self.items.append({'check': what, 'passed': ok, 'detail': detail})
        if not ok:
            logger.warning(f"[VERIFY] {self.name}: не прошло «{what}» {detail or ''}")
        return ok

    def result(self) -> dict:
        return {
            'criterion': self.name,
            'passed': all(item['passed'] for item in self.items),
            'checks': self.items,
        }


def _groups(level):
    return SMALL + [RANK_THREE] if level == 'full' else SMALL


def rank_three_strong(level, seed):
    c = Checks('rank_three_strong')
    verdict = is_strongly_degenerate(delta(RANK_THREE))
    c.check('Δ(2,2,2) over M* has no strong monomial witness', verdict.answer == NO_MONOMIAL_WITNESS,
            verdict.to_dict())
    return c.result()


def p2_degeneracy(level, seed):
    """Вердикт закреплён и подтверждён препятствием по модулю 2 на каждой нециклической паре."""
    c = Checks('p2_degeneracy')
    for G in (KLEIN, GroupSpec(2, (2, 4)), RANK_THREE):
        P = delta(G)
        pairs = noncyclic_pairs(G)
        verdict = is_degenerate(P)
        c.check(f'({G.label()}): no monomial witness', verdict.answer == NO_MONOMIAL_WITNESS, verdict.to_dict())
        c.check(f'({G.label()}): all {len(pairs)} noncyclic pairs examined', verdict.pairs_examined == len(pairs),
                {'examined': verdict.pairs_examined})
        free = [f'{m}, {n}' for m, n in pairs if not mod_p_obstruction(P, m, n)]
        c.check(f'({G.label()}): rank over F_2 grows when u is appended, on every pair', not free,
                {'pairs_without_obstruction': free})
    return c.result()


def odd_p_nondegeneracy(level, seed):
    c = Checks('odd_p_nondegeneracy')
    groups = [GroupSpec(3, (3, 3))] + ([GroupSpec(3, (3, 3, 3))] if level == 'full' else [])
    for G in groups:
        verdict = is_degenerate(delta(G))
        c.check(f'({G.label()}) over M*', verdict.answer == NO_MONOMIAL_WITNESS)
        c.check(f'({G.label()}): all noncyclic pairs examined', verdict.pairs_examined == len(noncyclic_pairs(G)))
    return c.result()


def cohomology_ledger(level, seed):
    c = Checks('cohomology_ledger')
    for G in _groups(level):
        data = build_canonical(G)
        c.check(f'({G.label()}): |[c₂]| = |G|', class_order(data.c2) == G.order)
        subgroups = enumerate_subgroups(G)
        c.check(f'({G.label()}): H¹(H, A₂) = 0 for all H', is_h1_trivial(data.A2, subgroups))
        c.check(f'({G.label()}): Ĥ⁰(H, I[G]) = 0 for all H',
                all(tate_h0(data.IG, H).is_trivial for H in subgroups))
        h1 = cohomology_group(data.IG, 1)
        c.check(f'({G.label()}): |H¹(G, I[G])| = |G|', h1.free_rank == 0 and h1.torsion_order == G.order,
                h1.to_dict())
    return c.result()


def crossed_product_coherence(level, seed):
    c = Checks('crossed_product_coherence')
    for G in _groups(level):
        data = build_canonical(G)
        P = presentation_from_cocycle(data.c2)
        same = all(
            (P.b[i] == data.b[i]).all() and all((P.u[i][j] == data.u[i][j]).all() for j in range(G.r))
            for i in range(G.r)
        )
        c.check(f'({G.label()}): vᵢⱼ = uᵢⱼ, dᵢ = bᵢ', same)
        zero_pairs = all(
            not any(data.c2.value(G.generator(i), G.generator(j)))
            for i in range(G.r) for j in range(i + 1, G.r)
        )
        zero_powers = all(
            not any(data.c2.value(G.scale(a, G.generator(i)), G.scale(b, G.generator(i))))
            for i, n in enumerate(G.orders) for a in range(n) for b in range(n - a)
        )
        c.check(f'({G.label()}): c₂ vanishes on generator pairs and short powers', zero_pairs and zero_powers)
    return c.result()


def _random_k(P, rng):
    return [[rng.randint(-2, 2) for _ in range(P.rank)] for _ in range(P.group.r)]


def _planted(G, rng):
    P = trivial_presentation(regular_lattice(G))
    return rebase(P, _random_k(P, rng))


def _agree(c, P):
    strong = is_strongly_degenerate(P).is_yes
    found = homogeneous_ppower_central_search(PowerSeriesACP(P)).found
    c.check(f'{P.label}: strong ⟺ graded', strong == found, {'strong': strong, 'graded': found})
    return strong


def equivalence_suite(level, seed):
    """Расщепимые и перебазированные общие экземпляры, затем все Δ(G), Δ′(G) из списка."""
    c = Checks('equivalence_suite')
    rng = random.Random(seed)
    count = 50 if level == 'full' else 10
    for _ in range(count):
        P = _planted(rng.choice([KLEIN, GroupSpec(2, (2, 4))]), rng)
        c.check(f'{P.label}: planted split instance is strongly degenerate', _agree(c, P))
    # Замена zᵢ ↦ kᵢzᵢ не меняет ни одну из сторон, а у Δ′(G) обе стороны - нет
    for _ in range(count):
        P = delta_prime(rng.choice([KLEIN, GroupSpec(3, (3, 3))]))
        P = rebase(P, _random_k(P, rng))
        c.check(f'{P.label}: rebased generic instance is not strongly degenerate', not _agree(c, P))
    for G in EQUIVALENCE_GROUPS[level]:
        _agree(c, delta_prime(G))
        _agree(c, delta(G))
    return c.result()


def valuation_facts(level, seed):
    c = Checks('valuation_facts')
    for G in _groups(level):
        for P in (delta_prime(G), delta(G)):
            A = PowerSeriesACP(P)
            quotient = value_data(A).quotient
            c.check(f'{P.label}: Γ_D/Γ_F = n̄', sorted(quotient) == sorted(G.orders), list(quotient))
            c.check(f'{P.label}: semi-ramified', is_semi_ramified(A))
    return c.result()


def chow_identities(level, seed):
    c = Checks('chow_identities')
    regimes = [(p, n) for p in (3, 5) for n in range(2, 6)] + [(2, n) for n in range(3, 7)]
    for p, n in regimes:
        c.check(f'p={p}, n={n}: transfer', transfer_identity_check(p, n))
        c.check(f'p={p}, n={n}: degrees ≥ 3',
                tadic_degree(generator_x(p, n)) >= 3 and tadic_degree(generator_y(p, n)) >= 3)
    c.check('ind = p → torsion free', ch2_torsion_verdict(3, 1).verdict == TORSION_FREE)
    c.check('generic, odd p → cyclic of order p',
            ch2_torsion_verdict(3, 2, generic=True).verdict == CYCLIC_OF_ORDER_P)
    try:
        ch2_torsion_verdict(3, 2, generic=True, degenerate=True)
        contradiction = False
    except ContradictionDetected:
        contradiction = True
    c.check('generic + degenerate, odd p → contradiction', contradiction)
    return c.result()


def _box(radius, size):
    return np.array(list(itertools.product(range(-radius, radius + 1), repeat=size)), dtype=object)


def box_solvable(A, t, radius=3) -> bool:
    """A x = t с x ∈ [−radius, radius]^n полным перебором, встреча посередине."""
    half = A.shape[1] // 2
    right = {tuple(v) for v in _box(radius, A.shape[1] - half).dot(A[:, half:].T)}
    return any(tuple(t - v) in right for v in _box(radius, half).dot(A[:, :half].T))


def _solver_oracle(c, rng, count):
    solved = 0
    for _ in range(count):
        A = integer_matrix([[rng.randint(-3, 3) for _ in range(8)] for _ in range(6)])
        if rng.random() < 1 / 3:
            # ранг 4: правая часть общего положения несовместна
            A[4] = A[0] + A[1]
            A[5] = 2 * A[2]
        if rng.random() < 0.5:
            t = A.dot(np.array([rng.randint(-3, 3) for _ in range(8)], dtype=object))
        else:
            t = np.array([rng.randint(-6, 6) for _ in range(6)], dtype=object)
        box = box_solvable(A, t)
        try:
            x = solve_integer_system(A, t)
            ok = (A.dot(x) == t).all()
            solved += 1
        except NoSolution:
            ok = not box
        if not c.check('solve_integer_system vs box [−3,3]⁸', ok, {'A': A.tolist(), 't': list(t), 'box': box}):
            break
    return solved


def sign_lattice(G):
    return GLattice(G, tuple(-identity(1) for _ in range(G.r)), label='Z-').validate()


def unimodular_conjugate(M, rng, steps=4):
    """Та же решётка в базисе, заданном случайным произведением элементарных матриц."""
    P, P_inv = identity(M.rank), identity(M.rank)
    for _ in range(steps if M.rank > 1 else 0):
        i, j = rng.sample(range(M.rank), 2)
        k = rng.randint(-2, 2)
        E, E_inv = identity(M.rank), identity(M.rank)
        E[i, j], E_inv[i, j] = k, -k
        P, P_inv = E.dot(P), P_inv.dot(E_inv)
    actions = tuple(P.dot(A).dot(P_inv) for A in M.actions)
    return GLattice(M.group, actions, label=f'{M.label}^P').validate()


def h1_order_by_counting(M) -> int:
    """|H¹(G,M)| = |(M/N)^G| / N^{rank M^G}, N = |G|: перебор M/N."""
    N = M.group.order
    fixed_mod = 0
    for v in itertools.product(range(N), repeat=M.rank):
        v = np.array(v, dtype=object)
        if all(((A.dot(v) - v) % N == 0).all() for A in M.actions):
            fixed_mod += 1
    return fixed_mod // N ** cohomology_group(M, 0).free_rank


def small_lattices(G):
    IG, _ = augmentation_ideal(G)
    return [
        trivial_lattice(G, 1),
        sign_lattice(G),
        IG,
        regular_lattice(G),
        direct_sum(IG, trivial_lattice(G, 1)).validate(),
        direct_sum(sign_lattice(G), sign_lattice(G)).validate(),
    ]


def _cohomology_oracle(c, rng):
    for G in (KLEIN, CYCLIC4):
        for M in small_lattices(G):
            M = unimodular_conjugate(M, rng)
            h1 = cohomology_group(M, 1)
            expected = h1_order_by_counting(M)
            c.check(f'|H¹({G.label()}, {M.label})| by Smith form vs counting',
                    h1.free_rank == 0 and h1.torsion_order == expected,
                    {'smith': h1.to_dict(), 'counting': expected})

    # Ĥ⁰(G, ℤ_χ) = ℤ/4 для тривиального χ и 0 иначе
    chars = [(1, 1), (-1, 1), (1, -1), (-1, -1)]
    for signs in itertools.chain.from_iterable(itertools.product(chars, repeat=k) for k in range(1, 3)):
        M = _character_lattice(signs)
        expected = 4 ** sum(1 for s in signs if s == (1, 1))
        c.check(f'Ĥ⁰ of characters {signs}', tate_h0(M, whole_group(KLEIN)).torsion_order == expected)


def _character_lattice(signs):
    actions = tuple(integer_matrix(np.diag([s[i] for s in signs]).tolist()) for i in range(2))
    return GLattice(KLEIN, actions, label='chars').validate()


def _box_witness(P, m, n, radius):
    rank = P.rank
    box = _box(radius, rank)
    right = {tuple(v) for v in box.dot((P.lattice.action(n) - identity(rank)).T)}
    u = commutator_u(P, m, n)
    return any(tuple(u - v) in right for v in box.dot((P.lattice.action(m) - identity(rank)).T))


def _degeneracy_oracle(c, rng, count, radius=2):
    chars = [(1, 1), (-1, 1), (1, -1), (-1, -1)]
    elements = enumerate_elements(KLEIN)[1:]
    for _ in range(count):
        signs = [rng.choice(chars) for _ in range(rng.randint(1, 4))]
        M = _character_lattice(signs)
        K = kernel_basis(coboundary_matrix(M, 2, whole_group(KLEIN)))
        coords = np.array([rng.randint(-2, 2) for _ in range(K.shape[1])], dtype=object)
        flat = K.dot(coords) if K.shape[1] else zeros(K.shape[0])
        P = presentation_from_cocycle(Cochain.from_flat(M, 2, flat, whole_group(KLEIN).elements))
        found = any(_box_witness(P, m, n, radius) for m, n in itertools.combinations(elements, 2))
        verdict = is_degenerate(P)
        c.check('box witness ⇒ verdict yes', verdict.is_yes or not found, {'signs': signs})
        if verdict.is_yes:
            w = verdict.witness
            c.check('verdict yes ⇒ witness verifies', verify_degenerate_witness(P, w), {'signs': signs})
            if max(abs(x) for x in list(w.a) + list(w.b)) <= radius:
                c.check('witness inside the box ⇒ box finds it', found, {'signs': signs})


def oracle_suite(level, seed):
    c = Checks('oracle_suite')
    rng = random.Random(seed)
    count = 100 if level == 'full' else 30
    solved = _solver_oracle(c, rng, count)
    _cohomology_oracle(c, rng)
    _degeneracy_oracle(c, rng, count // 2)
    logger.info(f"[VERIFY] oracle_suite: решено систем {solved} из {count}")
    return c.result()


def golden_path(golden_dir: Path, p, orders, model) -> Path:
    return Path(golden_dir) / f"analyze_p{p}_{'-'.join(map(str, orders))}_{model}.json"


def _render(args) -> str:
    p, orders, model = args
    return render_json(analyze(GroupSpec(p, orders), model).to_dict())


def render_with_threads(inputs, workers: int):
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_render, inputs))


def determinism(level, seed, golden_dir=None, update_golden=False):
    """Прогоны при разном числе потоков совпадают между собой и с эталонами."""
    c = Checks('determinism')
    golden_dir = Path(golden_dir or settings.ACP_GOLDEN_DIR)
    inputs = GOLDEN_INPUTS[level]
    runs = [render_with_threads(inputs, workers) for workers in THREAD_COUNTS]
    for index, (p, orders, model) in enumerate(inputs):
        name = f'({GroupSpec(p, orders).label()}) {model}'
        outputs = [run[index] for run in runs]
        c.check(f'{name}: byte-identical under {THREAD_COUNTS} threads', len(set(outputs)) == 1)
        path = golden_path(golden_dir, p, orders, model)
        if update_golden:
            golden_dir.mkdir(parents=True, exist_ok=True)
            path.write_text(outputs[0], encoding='utf-8')
            logger.info(f"[VERIFY] Записан эталон {path}")
            c.check(f'{name}: golden written', True, str(path))
            continue
        if not path.exists():
            c.check(f'{name}: golden present', False, f'{path} отсутствует, нужен запуск с --update-golden')
            continue
        stored = path.read_text(encoding='utf-8')
        diff = list(difflib.unified_diff(
            stored.splitlines(), outputs[0].splitlines(), fromfile=str(path), tofile='analyze', lineterm='',
        ))
        c.check(f'{name}: matches golden', not diff, '\n'.join(diff[:60]) or None)
    return c.result()


CRITERIA = [
    ('rank_three_strong', rank_three_strong),
    ('p2_degeneracy', p2_degeneracy),
    ('odd_p_nondegeneracy', odd_p_nondegeneracy),
    ('cohomology_ledger', cohomology_ledger),
    ('crossed_product_coherence', crossed_product_coherence),
    ('equivalence_suite', equivalence_suite),
    ('valuation_facts', valuation_facts),
    ('chow_identities', chow_identities),
    ('oracle_suite', oracle_suite),
    ('determinism', determinism),
]


def run_criterion(name, level='fast', seed=None, **kwargs) -> dict:
    """Один критерий с замером времени; ошибки домена - провал, а не сбой."""
    fn = dict(CRITERIA)[name]
    seed = settings.ACP_SEED if seed is None else seed
    started = time.perf_counter()
    try:
        result = fn(level, seed, **kwargs)
    except AlgebraError as exc:
        logger.error(f"[VERIFY] {name}: {type(exc).__name__}: {exc}")
        result = {'criterion': name, 'passed': False, 'checks': [], 'error': f'{type(exc).__name__}: {exc}'}
    result['seconds'] = round(time.perf_counter() - started, 3)
    logger.info(f"[VERIFY] {name}: {'OK' if result['passed'] else 'FAIL'} за {result['seconds']} с")
    return result
