from fractions import Fraction

from django.test import SimpleTestCase, tag
from hypothesis import given, settings as hsettings, strategies as st

from crossedproducts.services import delta, delta_prime, rebase, trivial_presentation
from degeneracy.services import is_strongly_degenerate
from groups.models import GroupSpec
from lattices.services import regular_lattice
from .exceptions import LengthMismatch
from .models import PowerSeriesACP, ValueVector
from .services import (
    compare_lex, homogeneous_ppower_central_search, is_semi_ramified, monomial_value,
    semi_ramification_report, value_data,
)

KLEIN = GroupSpec(2, (2, 2))
GROUPS = [KLEIN, GroupSpec(2, (2, 4)), GroupSpec(3, (3, 3))]

values = st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=4), min_size=3, max_size=3).map(ValueVector.of)


def planted(G, draw):
    M = regular_lattice(G)
    k = [draw(st.lists(st.integers(-2, 2), min_size=M.rank, max_size=M.rank)) for _ in range(G.r)]
    return rebase(trivial_presentation(M), k)


class CompareTests(SimpleTestCase):
    """Порядок справа налево"""

    def test_examples(self):
        self.assertEqual(compare_lex(ValueVector.of([1, 0]), ValueVector.of([0, 1])), -1)
        self.assertEqual(compare_lex(ValueVector.of([5, 2]), ValueVector.of([-3, 2])), 1)
        self.assertEqual(compare_lex(ValueVector.of([Fraction(1, 2), 1]), ValueVector.of([Fraction(1, 2), 1])), 0)

    def test_length_mismatch(self):
        with self.assertRaises(LengthMismatch):
            compare_lex(ValueVector.of([1]), ValueVector.of([1, 0]))
        with self.assertRaises(LengthMismatch):
            ValueVector.of([1]) < ValueVector.of([1, 0])

    @given(st.lists(values, min_size=1, max_size=8))
    @hsettings(max_examples=50, deadline=None)
    def test_sort_matches_reversed_tuples(self, vs):
        self.assertEqual(sorted(vs), sorted(vs, key=lambda v: tuple(reversed(v.coords))))

    @given(values, values, values)
    @hsettings(max_examples=50, deadline=None)
    def test_total_order(self, a, b, c):
        self.assertEqual(compare_lex(a, b), -compare_lex(b, a))
        if compare_lex(a, b) <= 0 and compare_lex(b, c) <= 0:
            self.assertLessEqual(compare_lex(a, c), 0)
        self.assertEqual(compare_lex(a, b) == 0, a == b)


class ValueDataTests(SimpleTestCase):
    """Γ_D, Γ_D/Γ_F и θ_D"""

    def test_klein(self):
        """v(zᵢ) = eᵢ/2, Γ_D/Γ_F = (2,2)"""
        A = PowerSeriesACP(delta_prime(KLEIN))
        data = value_data(A)
        self.assertEqual(data.gamma_d[0], ValueVector.of([Fraction(1, 2), 0]))
        self.assertEqual(data.gamma_d[1], ValueVector.of([0, Fraction(1, 2)]))
        self.assertEqual(sorted(data.quotient), [2, 2])
        self.assertTrue(data.isomorphic)

    def test_theta(self):
        """θ_D(v(z₁) + Γ_F) = σ₁"""
        G = GroupSpec(2, (2, 4))
        A = PowerSeriesACP(delta_prime(G))
        data = value_data(A)
        self.assertEqual(sorted(data.quotient), [2, 4])
        coset = str(A.z_value(0).fractional())
        self.assertEqual(data.theta[coset], G.generator(0))
        self.assertEqual(len(data.theta), G.order)

    def test_quotient_matches_group(self):
        print("\nΓ_D/Γ_F для Δ′(G) и Δ(G)")
        for G in GROUPS:
            for P in (delta_prime(G), delta(G)):
                A = PowerSeriesACP(P)
                self.assertEqual(sorted(value_data(A).quotient), sorted(G.orders), P.label)
                self.assertTrue(is_semi_ramified(A), P.label)

    def test_generator_value(self):
        """v(zᵢ^{nᵢ}) = v(bᵢxᵢ) = eᵢ"""
        G = GroupSpec(2, (2, 4))
        A = PowerSeriesACP(delta_prime(G))
        for i, n in enumerate(G.orders):
            power = A.presentation.power(A.presentation.z(i), n)
            self.assertTrue(power.is_scalar)
            self.assertEqual(monomial_value(A, power), ValueVector.of([1 if j == i else 0 for j in range(2)]))


class SemiRamificationTests(SimpleTestCase):

    def test_central_variable_toy(self):
        """v(z₁) ∈ ℤʳ: группа значений мала"""
        A = PowerSeriesACP(delta_prime(KLEIN), xshift=((1, 0), (0, 0)))
        self.assertEqual(A.z_value(0), ValueVector.of([1, 0]))
        self.assertFalse(is_semi_ramified(A))
        report = semi_ramification_report(A)
        self.assertEqual(report['index'], 2)
        self.assertFalse(report['value_data']['isomorphic_to_group'])

    def test_report(self):
        report = semi_ramification_report(PowerSeriesACP(delta(GroupSpec(3, (3, 3)))))
        self.assertTrue(report['semi_ramified'])
        self.assertTrue(report['defectless'])
        self.assertEqual(report['residue_degree'], 9)


class GradedSearchTests(SimpleTestCase):
    """Однородные элементы с центральной p-й степенью"""

    def assertSearchAgrees(self, P):
        A = PowerSeriesACP(P)
        result = homogeneous_ppower_central_search(A)
        strong = is_strongly_degenerate(P)
        self.assertEqual(result.found, strong.is_yes, P.label)
        return result

    def test_split(self):
        """u = 0, b = 0: поиск успешен"""
        A = PowerSeriesACP(trivial_presentation(regular_lattice(KLEIN)))
        result = homogeneous_ppower_central_search(A)
        self.assertTrue(result.found)
        self.assertFalse(result.degree.is_integral)
        self.assertTrue(result.certified)

    @given(st.data())
    @hsettings(max_examples=15, deadline=None)
    def test_planted_equivalence(self, data):
        G = data.draw(st.sampled_from([KLEIN, GroupSpec(2, (2, 4))]))
        result = self.assertSearchAgrees(planted(G, data.draw))
        self.assertTrue(result.found)
        self.assertFalse(result.degree.is_integral)

    def test_certificate(self):
        """Найденная ω^p - скаляр, неподвижный под всеми zᵢ"""
        A = PowerSeriesACP(planted(GroupSpec(2, (2, 4)), lambda s: [1, 0, -1, 0, 2, 0, 0, 1]))
        result = homogeneous_ppower_central_search(A)
        P = A.presentation
        omega = P.multiply(P.scalar(list(result.k) + list(result.lam)), P.zpow(result.m))
        power = P.power(omega, 2)
        self.assertTrue(power.is_scalar)
        for i in range(2):
            self.assertEqual(P.conjugate(power, P.z(i)), power)

    def test_canonical_equivalence(self):
        """Δ′(G) над A₂ и Δ(3,3) над M*"""
        for G in GROUPS:
            result = self.assertSearchAgrees(delta_prime(G))
            self.assertTrue(result.certified)
        self.assertSearchAgrees(delta(GroupSpec(3, (3, 3))))

    def test_strong_implies_graded(self):
        """На M* при p = 2, r = 2 проверяется только импликация"""
        for G in (KLEIN, GroupSpec(2, (2, 4))):
            P = delta(G)
            if is_strongly_degenerate(P).is_yes:
                self.assertTrue(homogeneous_ppower_central_search(PowerSeriesACP(P)).found)

    @tag('slow')
    def test_rank_three_mstar(self):
        """Δ(2,2,2) над M*: однородного элемента нет"""
        result = self.assertSearchAgrees(delta(GroupSpec(2, (2, 2, 2))))
        self.assertFalse(result.found)
