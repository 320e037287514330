from django.test import SimpleTestCase, tag
from hypothesis import given, settings as hsettings, strategies as st

from canonical.services import build_canonical
from cohomology.services import is_coboundary
from groups.models import GroupSpec
from groups.services import enumerate_elements
from lattices.linalg import identity, zeros
from lattices.services import augmentation_ideal, regular_lattice
from .exceptions import Inconsistent
from .models import CrossedProductPresentation
from .services import (
    brauer_class_order, cocycle_of, commutator_u, delta, delta_prime, normal_form,
    presentation_from_cocycle, rebase, reduce_word, trivial_presentation, validate_presentation,
)

KLEIN = GroupSpec(2, (2, 2))
GROUPS = [KLEIN, GroupSpec(2, (2, 4)), GroupSpec(3, (3, 3))]


def planted(G, lattice_name, draw):
    """Случайное представление: тривиальное, перебазированное векторами kᵢ."""
    if lattice_name == 'ZG':
        M = regular_lattice(G)
    elif lattice_name == 'IG':
        M, _ = augmentation_ideal(G)
    else:
        M = build_canonical(G).A2
    k = [draw(st.lists(st.integers(-2, 2), min_size=M.rank, max_size=M.rank)) for _ in range(G.r)]
    return rebase(trivial_presentation(M), k)


words = st.lists(
    st.one_of(
        st.tuples(st.just('z'), st.integers(0, 1)),
        st.tuples(st.just('zinv'), st.integers(0, 1)),
        st.tuples(st.just('k'), st.integers(0, 4)),
    ),
    max_size=8,
)


def materialize(P, word):
    out = []
    for kind, arg in word:
        if kind == 'k':
            v = zeros(P.rank)
            v[arg % P.rank] = 1
            out.append(('k', v))
        else:
            out.append((kind, arg))
    return out


class ValidationTests(SimpleTestCase):
    """Проверка представлений критическими парами"""

    def test_commutative_case(self):
        """u = 0 и G-неподвижные bᵢ - представление корректно"""
        M = regular_lattice(KLEIN)
        ones = [1, 1, 1, 1]
        P = CrossedProductPresentation(
            KLEIN, trivial_presentation(M).model,
            ((zeros(4), zeros(4)), (zeros(4), zeros(4))), (ones, ones),
        )
        report = validate_presentation(P)
        self.assertTrue(report.confluent)
        self.assertGreater(report.pairs_checked, 0)

    def test_canonical_presentations(self):
        """Δ′(G) и Δ(G) проходят проверку"""
        print("\nПроверка Δ′(G) и Δ(G)")
        for G in GROUPS:
            report = validate_presentation(delta_prime(G))
            self.assertTrue(report.confluent)
            self.assertEqual(report.compatibility, {'b_fixed': True, 'norm_condition': True})
        self.assertTrue(validate_presentation(delta(KLEIN)).confluent)

    def test_antisymmetry_violation(self):
        M = regular_lattice(KLEIN)
        u = ((zeros(4), [1, 0, 0, 0]), ([1, 0, 0, 0], zeros(4)))
        P = CrossedProductPresentation(KLEIN, trivial_presentation(M).model, u, (zeros(4), zeros(4)))
        with self.assertRaises(Inconsistent):
            validate_presentation(P)

    def test_non_fixed_power(self):
        """bᵢ, не неподвижный под σᵢ, ломает пару zᵢ^{nᵢ+1}"""
        M = regular_lattice(KLEIN)
        P = CrossedProductPresentation(
            KLEIN, trivial_presentation(M).model,
            ((zeros(4), zeros(4)), (zeros(4), zeros(4))), ([1, 0, 0, 0], zeros(4)),
        )
        with self.assertRaises(Inconsistent) as ctx:
            validate_presentation(P)
        self.assertIsNotNone(ctx.exception.pair)

    @given(st.sampled_from(['ZG', 'IG', 'A2']), st.data())
    @hsettings(max_examples=10, deadline=None)
    def test_rebased_is_valid(self, lattice_name, data):
        P = planted(GroupSpec(2, (2, 4)), lattice_name, data.draw)
        self.assertTrue(validate_presentation(P).confluent)


class NormalFormTests(SimpleTestCase):
    """Нормальные формы слов"""

    def test_examples(self):
        P = delta_prime(KLEIN)
        x = normal_form(P, [('z', 0), ('z', 1)])
        self.assertFalse(any(x.coeff))
        self.assertEqual(x.zexp.exps, (1, 1))
        y = normal_form(P, [('z', 1), ('z', 0)])
        self.assertEqual(list(y.coeff), list(P.u[1][0]))
        self.assertEqual(y.zexp.exps, (1, 1))
        for i in range(2):
            w = normal_form(P, [('z', i)] * 2)
            self.assertEqual(list(w.coeff), list(P.b[i]))
            self.assertTrue(w.is_scalar)

    def test_inverse(self):
        P = delta_prime(GroupSpec(2, (2, 4)))
        for g in enumerate_elements(P.group):
            x = P.zpow(g)
            self.assertEqual(P.multiply(x, P.inverse(x)), P.one())
            self.assertEqual(P.multiply(P.inverse(x), x), P.one())

    @given(words, st.integers(0, 1000), st.data())
    @hsettings(max_examples=40, deadline=None)
    def test_strategy_independence(self, word, seed, data):
        """Случайный порядок переписывания даёт ту же нормальную форму"""
        P = planted(KLEIN, data.draw(st.sampled_from(['ZG', 'A2'])), data.draw)
        word = materialize(P, word)
        expected = normal_form(P, word)
        self.assertEqual(reduce_word(P, word), expected)
        self.assertEqual(reduce_word(P, word, strategy='random', seed=seed), expected)


class CommutatorTests(SimpleTestCase):
    """u_{m̄,n̄}"""

    def test_generators(self):
        for G in GROUPS:
            P = delta_prime(G)
            for i in range(G.r):
                for j in range(G.r):
                    u = commutator_u(P, G.generator(i), G.generator(j))
                    self.assertEqual(list(u), list(P.u[i][j]))

    def test_symmetries(self):
        P = delta_prime(GroupSpec(2, (2, 4)))
        elements = enumerate_elements(P.group)
        for m in elements:
            self.assertFalse(any(commutator_u(P, m, m)))
            for n in elements:
                self.assertFalse(any(commutator_u(P, m, n) + commutator_u(P, n, m)))

    def test_twisted_additivity(self):
        """u_{m+m′,n} = σ^m u_{m′,n} + u_{m,n} + (σⁿ − 1)c(m, m′)"""
        for G in (KLEIN, GroupSpec(2, (2, 4))):
            P = delta_prime(G)
            M = P.lattice
            c = cocycle_of(P)
            elements = enumerate_elements(G)
            I = identity(P.rank)
            for m in elements:
                for m2 in elements:
                    for n in elements:
                        left = commutator_u(P, G.add(m, m2), n)
                        right = (M.act(m, commutator_u(P, m2, n)) + commutator_u(P, m, n)
                                 + (M.action(n) - I).dot(c.value(m, m2)))
                        self.assertEqual(list(left), list(right))


class CocycleTests(SimpleTestCase):
    """Коцикл скрещённого произведения"""

    def test_normalized_and_cyclic_powers(self):
        for G in GROUPS:
            c = cocycle_of(delta_prime(G))
            for g in enumerate_elements(G):
                self.assertFalse(any(c.value(G.identity, g)))
            for i, n in enumerate(G.orders):
                s = G.generator(i)
                for a in range(n):
                    for b in range(n - a):
                        self.assertFalse(any(c.value(G.scale(a, s), G.scale(b, s))))

    def test_matches_c2(self):
        """[c] = [c₂] для Δ′(G)"""
        for G in GROUPS:
            self.assertTrue(is_coboundary(cocycle_of(delta_prime(G)) - build_canonical(G).c2))

    def test_presentation_from_c2(self):
        """vᵢⱼ = uᵢⱼ и dᵢ = bᵢ для образующих wᵢ алгебры c₂"""
        for G in GROUPS + [GroupSpec(2, (2, 2, 2))]:
            data = build_canonical(G)
            P = presentation_from_cocycle(data.c2)
            for i in range(G.r):
                self.assertEqual(list(P.b[i]), list(data.b[i]))
                for j in range(G.r):
                    self.assertEqual(list(P.u[i][j]), list(data.u[i][j]))

    @given(st.data())
    @hsettings(max_examples=10, deadline=None)
    def test_cocycle_round_trip(self, data):
        P = planted(KLEIN, 'IG', data.draw)
        Q = presentation_from_cocycle(cocycle_of(P))
        for i in range(2):
            self.assertEqual(list(Q.b[i]), list(P.b[i]))
            for j in range(2):
                self.assertEqual(list(Q.u[i][j]), list(P.u[i][j]))


class BrauerOrderTests(SimpleTestCase):
    """Порядок класса алгебры"""

    def test_split(self):
        self.assertEqual(brauer_class_order(trivial_presentation(regular_lattice(KLEIN))), 1)

    def test_delta_prime(self):
        """exp Δ′(G) = |G|, и совпадает с порядком [c₂]"""
        self.assertEqual(brauer_class_order(delta_prime(KLEIN)), 4)
        self.assertEqual(brauer_class_order(delta_prime(GroupSpec(3, (3, 3)))), 9)

    def test_rebase_keeps_order(self):
        P = delta_prime(KLEIN)
        k = [identity(P.rank)[:, 0], identity(P.rank)[:, 3]]
        Q = rebase(P, k)
        self.assertTrue(validate_presentation(Q).confluent)
        self.assertEqual(brauer_class_order(Q), 4)

    @tag('slow')
    def test_delta_prime_rank_three(self):
        self.assertEqual(brauer_class_order(delta_prime(GroupSpec(2, (2, 2, 2)))), 8)
