import math

from django.test import SimpleTestCase
from hypothesis import given, settings as hsettings, strategies as st
from sympy import expand, symbols

from .exceptions import ContradictionDetected, InvalidRegime
from .models import CYCLIC_OF_ORDER_P, TORSION_FREE, UNKNOWN, FiltrationElement
from .services import (
    ch2_torsion_verdict, generator_x, generator_y, regime_table, tadic_degree,
    transfer_identity_check, transfer_scalar,
)

xi, t = symbols('xi t')
ODD_REGIMES = [(p, n) for p in (3, 5) for n in range(2, 6)]
EVEN_REGIMES = [(2, n) for n in range(3, 7)]


def expanded(expr, N):
    """Коэффициенты многочлена от ξ после подстановки ξ = 1 + t, до t^N."""
    poly = expand(expr.subs(xi, 1 + t))
    return tuple(int(poly.coeff(t, k)) for k in range(N + 1))


class GeneratorTests(SimpleTestCase):
    """Разложения x и y"""

    def test_examples(self):
        x = generator_x(3, 2)
        self.assertEqual(x.N, 8)
        self.assertEqual(x.coeffs, (0, 0, 0, -18, -15, -6, -1, 0, 0))
        self.assertEqual(generator_y(2).coeffs, (0, 0, 0, -4, -1, 0, 0, 0))

    def test_against_direct_expansion(self):
        """Независимое разложение через sympy.expand"""
        for p, n in ODD_REGIMES:
            N = p ** n - 1
            x_expr = p ** n * (xi - 1) ** 2 - p ** (n - 2) * (xi ** p - 1) ** 2
            self.assertEqual(generator_x(p, n).coeffs, expanded(x_expr, N))
        for p, n in EVEN_REGIMES:
            N = 2 ** n - 1
            x_expr = 2 ** (n - 1) * (xi - 1) ** 2 - 2 ** (n - 3) * (xi ** 2 - 1) ** 2
            self.assertEqual(generator_x(p, n).coeffs, expanded(x_expr, N))
            y_expr = 4 * (xi - 1) ** 2 - (xi ** 2 - 1) ** 2
            self.assertEqual(generator_y(p, n).coeffs, expanded(y_expr, N))

    def test_t_squared_cancels(self):
        for p, n in ODD_REGIMES + EVEN_REGIMES:
            self.assertEqual(generator_x(p, n).coeffs[2], 0)
            self.assertEqual(generator_y(p, n).coeffs[2], 0)

    def test_invalid_regime(self):
        for p, n in [(3, 1), (2, 2), (4, 3), (2, 1)]:
            with self.assertRaises(InvalidRegime):
                generator_x(p, n)


class TransferTests(SimpleTestCase):
    """scalar·y = x"""

    def test_examples(self):
        self.assertEqual(transfer_scalar(3, 3), 3)
        self.assertEqual(transfer_scalar(2, 3), 1)
        self.assertTrue(transfer_identity_check(3, 3))
        self.assertTrue(transfer_identity_check(2, 3))
        self.assertTrue(transfer_identity_check(5, 2))

    def test_all_regimes(self):
        print("\nТождество трансфера")
        for p, n in ODD_REGIMES + [(7, 2), (7, 3)] + EVEN_REGIMES:
            self.assertTrue(transfer_identity_check(p, n), (p, n))

    def test_wrong_scalar_fails(self):
        x = generator_x(3, 3)
        self.assertNotEqual(1 * generator_y(3, 3), x)


class DegreeTests(SimpleTestCase):

    def test_examples(self):
        self.assertEqual(tadic_degree(generator_y(3)), 3)
        self.assertEqual(tadic_degree(generator_x(2, 3)), 3)
        self.assertEqual(tadic_degree(FiltrationElement((0, 0, 0))), math.inf)

    def test_at_least_three(self):
        for p, n in ODD_REGIMES + EVEN_REGIMES:
            self.assertGreaterEqual(tadic_degree(generator_x(p, n)), 3)
            self.assertGreaterEqual(tadic_degree(generator_y(p, n)), 3)

    @given(st.lists(st.integers(-5, 5), min_size=6, max_size=6), st.lists(st.integers(-5, 5), min_size=6, max_size=6))
    @hsettings(max_examples=50, deadline=None)
    def test_product_degree(self, a, b):
        """Степень произведения - сумма степеней, если она не выше усечения"""
        e, f = FiltrationElement(tuple(a)), FiltrationElement(tuple(b))
        total = tadic_degree(e) + tadic_degree(f)
        product = e * f
        if total <= product.N:
            self.assertEqual(tadic_degree(product), total)
        else:
            self.assertTrue(product.is_zero)

    def test_regime_table(self):
        table = regime_table(3, 2)
        self.assertTrue(table['transfer_identity'])
        self.assertEqual(table['tadic_degree'], {'x': 3, 'y': 3})
        self.assertIn('cited', table['filtration_claim'])


class VerdictTests(SimpleTestCase):
    """Таблица вердиктов о кручении CH²"""

    def test_index_p(self):
        self.assertEqual(ch2_torsion_verdict(3, 1).verdict, TORSION_FREE)
        self.assertEqual(ch2_torsion_verdict(2, 2, generic=True).verdict, TORSION_FREE)

    def test_generic(self):
        report = ch2_torsion_verdict(3, 2, generic=True)
        self.assertEqual(report.verdict, CYCLIC_OF_ORDER_P)
        self.assertEqual(report.reasons[0]['rule'], 'generic_exponent_p')
        self.assertEqual(ch2_torsion_verdict(2, 3, generic=True).verdict, CYCLIC_OF_ORDER_P)

    def test_p2_formulas(self):
        """Флаг p2 допустим только при p = 2"""
        self.assertEqual(ch2_torsion_verdict(2, 3, generic=True, p2=True).verdict, CYCLIC_OF_ORDER_P)
        with self.assertRaises(InvalidRegime):
            ch2_torsion_verdict(3, 2, generic=True, p2=True)

    def test_contradiction(self):
        """Общая алгебра не может быть вырожденной при нечётном p"""
        with self.assertRaises(ContradictionDetected) as ctx:
            ch2_torsion_verdict(3, 2, generic=True, degenerate=True)
        self.assertEqual(len(ctx.exception.reasons), 2)
        self.assertIn('contradiction', str(ctx.exception))

    def test_strong_rule_needs_rank_three(self):
        self.assertEqual(ch2_torsion_verdict(2, 3, strongly_degenerate=True, r=2).verdict, UNKNOWN)
        self.assertEqual(ch2_torsion_verdict(2, 3, strongly_degenerate=True, r=3).verdict, TORSION_FREE)
        self.assertEqual(ch2_torsion_verdict(2, 3, degenerate=True, r=3).verdict, UNKNOWN)

    @given(st.sampled_from([2, 3, 5]), st.integers(1, 5), st.booleans(), st.booleans(), st.booleans(), st.integers(1, 4))
    @hsettings(max_examples=100, deadline=None)
    def test_always_cited(self, p, n, generic, degenerate, strong, r):
        try:
            report = ch2_torsion_verdict(p, n, generic, degenerate, strong, r)
        except ContradictionDetected:
            return
        self.assertGreaterEqual(len(report.reasons), 1)
        for reason in report.reasons:
            self.assertTrue(reason['citation'])
        self.assertEqual(report, ch2_torsion_verdict(p, n, generic, degenerate, strong, r))
