from itertools import product

import numpy as np
from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings as hsettings, strategies as st

from groups.exceptions import BoundExceeded
from groups.models import GroupSpec
from groups.services import enumerate_elements, enumerate_subgroups, trivial_subgroup, whole_group
from lattices.linalg import identity, integer_matrix, zeros
from lattices.models import GLattice
from lattices.services import augmentation_ideal, direct_sum, p2_and_a2, regular_lattice, trivial_lattice
from .exceptions import InfiniteClassOrder, NotACocycle
from .models import Cochain
from .services import (
    c1_cochain, class_order, coboundary, coboundary_preimage, cohomology_group,
    connecting_h1_image, is_coboundary, is_h1_trivial, restrict, tate_h0,
)

KLEIN = GroupSpec(2, (2, 2))
CYCLIC4 = GroupSpec(2, (4,))


def sign_lattice(G):
    """ℤ, на котором σ₁ действует как −1, остальные тривиально."""
    actions = [integer_matrix([[-1]])] + [identity(1) for _ in range(G.r - 1)]
    return GLattice(G, tuple(actions), label='Z-').validate()


def conjugated(M, P, P_inv):
    """Та же решётка в другом базисе: A ↦ P A P⁻¹."""
    return GLattice(M.group, tuple(P.dot(A).dot(P_inv) for A in M.actions), label=M.label + "'").validate()


def h1_order_by_counting(M):
    """|H¹(G,M)| = |(M/N)^G| / N^{rank M^G}, N = |G|."""
    G = M.group
    N = G.order
    fixed_mod = 0
    for v in product(range(N), repeat=M.rank):
        v = np.array(v, dtype=object)
        if all(((A.dot(v) - v) % N == 0).all() for A in M.actions):
            fixed_mod += 1
    rank_fixed = cohomology_group(M, 0).free_rank
    fixed_exact = N ** rank_fixed
    assert fixed_mod % fixed_exact == 0
    return fixed_mod // fixed_exact


def random_cochain(data, M, degree, domain):
    size = len(domain) ** degree * M.rank
    flat = data.draw(st.lists(st.integers(-5, 5), min_size=size, max_size=size))
    return Cochain.from_flat(M, degree, flat, domain)


unimodular_steps = st.lists(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-2, 2)), min_size=0, max_size=6,
)


def elementary_product(rank, steps):
    """Произведение элементарных матриц и обратная к нему."""
    P = identity(rank)
    P_inv = identity(rank)
    for i, j, k in steps:
        i, j = i % rank, j % rank
        if i != j:
            E = identity(rank)
            E[i, j] = k
            E_inv = identity(rank)
            E_inv[i, j] = -k
            P = E.dot(P)
            P_inv = P_inv.dot(E_inv)
    return P, P_inv


class CoboundaryTests(SimpleTestCase):
    """Дифференциал бар-комплекса"""

    def test_degree_zero(self):
        """δv(g) = g·v − v"""
        ZG = regular_lattice(KLEIN)
        v = [1, 2, 0, -1]
        f = Cochain.from_function(ZG, 0, lambda: v, whole_group(KLEIN).elements)
        df = coboundary(f)
        for g in enumerate_elements(KLEIN):
            self.assertEqual(list(df.value(g)), list(ZG.act(g, v) - np.array(v, dtype=object)))

    def test_c1_is_cocycle(self):
        """δc₁ = 0 для c₁(g) = g − 1"""
        for G in (KLEIN, CYCLIC4, GroupSpec(3, (3, 3))):
            self.assertTrue(coboundary(c1_cochain(G)).is_zero())

    @given(st.data())
    @hsettings(max_examples=20, deadline=None)
    def test_square_is_zero(self, data):
        """δ∘δ = 0 на случайных коцепях степени 0, 1, 2"""
        IG, _ = augmentation_ideal(KLEIN)
        degree = data.draw(st.integers(0, 2))
        f = random_cochain(data, IG, degree, whole_group(KLEIN).elements)
        self.assertTrue(coboundary(coboundary(f)).is_zero())

    def test_serialization(self):
        IG, _ = augmentation_ideal(KLEIN)
        table = c1_cochain(KLEIN).to_dict()['table']
        self.assertEqual(table['(0,1)'], [1, 0, 0])
        self.assertEqual(table['(0,0)'], [0, 0, 0])
        f = Cochain.from_function(IG, 2, lambda g, h: zeros(3), whole_group(KLEIN).elements)
        self.assertIn('(0,0)|(1,1)', f.to_dict()['table'])
        self.assertEqual(len(f.to_dict()['table']), 16)


class CohomologyGroupTests(SimpleTestCase):
    """Hⁿ(H, M) через форму Смита"""

    def test_free_module(self):
        """H¹(H, ℤ[G]) = 0 для всех подгрупп"""
        for G in (KLEIN, GroupSpec(2, (2, 4)), GroupSpec(3, (3, 3))):
            self.assertTrue(is_h1_trivial(regular_lattice(G), enumerate_subgroups(G)))

    def test_augmentation_h1(self):
        """|H¹(G, I[G])| = |G|"""
        for G in (KLEIN, GroupSpec(2, (2, 4)), GroupSpec(3, (3, 3)), GroupSpec(2, (2, 2, 2))):
            IG, _ = augmentation_ideal(G)
            result = cohomology_group(IG, 1)
            self.assertEqual(result.torsion_order, G.order)
            self.assertEqual(result.free_rank, 0)

    def test_a2_is_h1_trivial(self):
        """H¹(H, A₂(G)) = 0 для всех H ≤ G"""
        print("\nH¹-тривиальность A₂(G)")
        for G in (KLEIN, GroupSpec(2, (2, 4)), GroupSpec(3, (3, 3))):
            seq = p2_and_a2(G)
            self.assertTrue(is_h1_trivial(seq.A2, enumerate_subgroups(G)))

    def test_degree_two_trivial_module(self):
        """H²(G, ℤ) ≅ Hom(G, ℚ/ℤ)"""
        self.assertEqual(cohomology_group(trivial_lattice(KLEIN), 2).invariant_factors, (2, 2))
        self.assertEqual(cohomology_group(trivial_lattice(CYCLIC4), 2).invariant_factors, (4,))
        self.assertTrue(cohomology_group(trivial_lattice(KLEIN), 1).is_trivial)

    def test_degree_zero(self):
        self.assertEqual(cohomology_group(regular_lattice(KLEIN), 0).free_rank, 1)
        self.assertEqual(cohomology_group(sign_lattice(KLEIN), 0).free_rank, 0)

    def test_bound(self):
        IG, _ = augmentation_ideal(KLEIN)
        with override_settings(ACP_COCHAIN_BOUND=10):
            with self.assertRaises(BoundExceeded):
                cohomology_group(IG, 1)
        with self.assertRaises(BoundExceeded):
            cohomology_group(IG, 2, bound=50)

    @given(st.sampled_from(['Z', 'Z-', 'I', 'ZG', 'I+Z', 'Z-+Z-']), st.sampled_from([KLEIN, CYCLIC4]), unimodular_steps)
    @hsettings(max_examples=30, deadline=None)
    def test_counting_oracle(self, name, G, steps):
        """|H¹| из формы Смита против подсчёта неподвижных векторов по модулю |G|"""
        IG, _ = augmentation_ideal(G)
        lattices = {
            'Z': trivial_lattice(G),
            'Z-': sign_lattice(G),
            'I': IG,
            'ZG': regular_lattice(G),
            'I+Z': direct_sum(IG, trivial_lattice(G)).validate(),
            'Z-+Z-': direct_sum(sign_lattice(G), sign_lattice(G)).validate(),
        }
        M = lattices[name]
        M = conjugated(M, *elementary_product(M.rank, steps))
        result = cohomology_group(M, 1)
        self.assertEqual(result.free_rank, 0)
        self.assertEqual(result.torsion_order, h1_order_by_counting(M))


class ClassOrderTests(SimpleTestCase):
    """Порядок класса коцикла"""

    @given(st.data())
    @hsettings(max_examples=15, deadline=None)
    def test_coboundary_has_order_one(self, data):
        IG, _ = augmentation_ideal(KLEIN)
        f = random_cochain(data, IG, 1, whole_group(KLEIN).elements)
        df = coboundary(f)
        self.assertEqual(class_order(df), 1)
        self.assertTrue(is_coboundary(df))
        g = coboundary_preimage(df)
        self.assertTrue((coboundary(g).values == df.values).all())

    def test_not_a_cocycle(self):
        IG, _ = augmentation_ideal(KLEIN)
        bad = Cochain.from_function(IG, 1, lambda g: [1, 0, 0], whole_group(KLEIN).elements)
        with self.assertRaises(NotACocycle):
            class_order(bad)

    def test_degree_zero_class(self):
        """Неподвижный ненулевой вектор - класс бесконечного порядка, нуль - порядка 1"""
        Z = trivial_lattice(KLEIN)
        domain = whole_group(KLEIN).elements
        self.assertEqual(class_order(Cochain.from_function(Z, 0, lambda: [0], domain)), 1)
        with self.assertRaises(InfiniteClassOrder):
            class_order(Cochain.from_function(Z, 0, lambda: [3], domain))

    def test_multiples_of_c1(self):
        """|k·[c₁]| = |G| / gcd(k, |G|)"""
        c1 = c1_cochain(CYCLIC4)
        for k, expected in ((1, 4), (2, 2), (3, 4), (4, 1)):
            self.assertEqual(class_order(k * c1), expected)
        self.assertFalse(is_coboundary(c1))

    def test_free_module_cocycles(self):
        """Коциклы со значениями в ℤ[G] - кограницы"""
        ZG = regular_lattice(KLEIN)
        f = Cochain.from_function(ZG, 1, lambda g: ZG.act(g, [0, 1, 0, 0]), whole_group(KLEIN).elements)
        self.assertEqual(class_order(coboundary(f)), 1)

    def test_connecting_h1_image(self):
        """[c₁] порождает H¹(G, I[G])"""
        for G in (KLEIN, GroupSpec(2, (2, 4)), GroupSpec(3, (3, 3))):
            image = connecting_h1_image(G)
            self.assertEqual(image.order, G.order)
            self.assertEqual(image.group_structure.torsion_order, G.order)

    def test_restriction_to_trivial_subgroup(self):
        c1 = c1_cochain(KLEIN)
        restricted = restrict(c1, trivial_subgroup(KLEIN))
        self.assertEqual(len(restricted.domain), 1)
        self.assertEqual(class_order(restricted), 1)

    def test_restriction_to_cyclic_subgroup(self):
        """Ограничение c₁ на ⟨σ₁⟩ имеет порядок 2"""
        c1 = c1_cochain(KLEIN)
        H = [S for S in enumerate_subgroups(KLEIN) if S.order == 2][0]
        self.assertEqual(class_order(restrict(c1, H)), 2)


class TateTests(SimpleTestCase):
    """Ĥ⁰(H, M) = M^H / N_H·M"""

    def test_trivial_module(self):
        self.assertEqual(tate_h0(trivial_lattice(KLEIN), whole_group(KLEIN)).invariant_factors, (4,))

    def test_regular_module(self):
        self.assertTrue(tate_h0(regular_lattice(KLEIN), whole_group(KLEIN)).is_trivial)

    def test_augmentation_ideal(self):
        """Ĥ⁰(H, I[G]) = 0 для всех H ≤ G"""
        for G in (KLEIN, GroupSpec(2, (2, 4)), GroupSpec(3, (3, 3)), GroupSpec(2, (2, 2, 2))):
            IG, _ = augmentation_ideal(G)
            for H in enumerate_subgroups(G):
                self.assertTrue(tate_h0(IG, H).is_trivial, f"H порядка {H.order} в ({G.label()})")
