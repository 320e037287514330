from itertools import combinations, product
from math import prod

from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings as hsettings, strategies as st

from .exceptions import BoundExceeded, InvalidGroupSpec
from .models import GroupElement, GroupSpec
from .services import (
    element_order, enumerate_elements, enumerate_subgroups, subgroup_generated,
)

GROUPS = [(2, (2, 2)), (2, (4, 2)), (3, (3, 3)), (2, (2, 2, 2)), (3, (9,)), (2, (4, 4))]


@st.composite
def group_and_element(draw):
    p, orders = draw(st.sampled_from(GROUPS))
    G = GroupSpec(p, orders)
    exps = tuple(draw(st.integers(0, n - 1)) for n in orders)
    return G, GroupElement(exps)


class GroupSpecTests(SimpleTestCase):
    """Проверка описания группы"""

    def test_parse(self):
        """Разбор строки 2,2,2"""
        G = GroupSpec.parse(2, '2,2,2')
        self.assertEqual(G.orders, (2, 2, 2))
        self.assertEqual(G.r, 3)
        self.assertEqual(G.order, 8)
        self.assertFalse(G.is_cyclic)

    def test_rejects_bad_orders(self):
        """Факторы порядка 1 и не степени p отклоняются"""
        with self.assertRaises(InvalidGroupSpec):
            GroupSpec(2, (1, 2))
        with self.assertRaises(InvalidGroupSpec):
            GroupSpec(2, (6,))
        with self.assertRaises(InvalidGroupSpec):
            GroupSpec(4, (4,))
        with self.assertRaises(InvalidGroupSpec):
            GroupSpec.parse(2, 'a,b')

    def test_element_reduction(self):
        """Представитель элемента приводится по модулю n̄"""
        G = GroupSpec(2, (4, 2))
        self.assertEqual(G.element((5, -1)), GroupElement((1, 1)))
        self.assertTrue(G.identity.is_identity)


class EnumerationTests(SimpleTestCase):
    """Перечисление элементов"""

    def test_klein_listing(self):
        """G=(2,2) перечисляется в лексикографическом порядке"""
        G = GroupSpec(2, (2, 2))
        self.assertEqual(
            [g.exps for g in enumerate_elements(G)],
            [(0, 0), (0, 1), (1, 0), (1, 1)],
        )

    def test_counts(self):
        """Число элементов равно произведению порядков"""
        for p, orders in GROUPS:
            G = GroupSpec(p, orders)
            elements = enumerate_elements(G)
            self.assertEqual(len(elements), prod(orders))
            self.assertEqual([G.index(g) for g in elements], list(range(len(elements))))

    def test_bound(self):
        """Превышение границы перебора"""
        with self.assertRaises(BoundExceeded):
            enumerate_elements(GroupSpec(2, (4, 4)), bound=8)

    @override_settings(ACP_ENUMERATION_BOUND=4)
    def test_bound_from_settings(self):
        """Граница по умолчанию берётся из настроек"""
        with self.assertRaises(BoundExceeded):
            enumerate_elements(GroupSpec(2, (2, 2, 2)))


class ElementOrderTests(SimpleTestCase):
    """Порядок элемента"""

    def test_examples(self):
        self.assertEqual(element_order(GroupSpec(2, (2, 2)), GroupElement((1, 1))), 2)
        self.assertEqual(element_order(GroupSpec(2, (4, 2)), GroupElement((1, 0))), 4)
        self.assertEqual(element_order(GroupSpec(2, (4, 4)), GroupElement((2, 2))), 2)

    @given(group_and_element())
    @hsettings(max_examples=60, deadline=None)
    def test_order_by_doubling(self, data):
        """Порядок совпадает с числом шагов до единицы"""
        G, g = data
        k, x = 1, g
        while not x.is_identity:
            x = G.add(x, g)
            k += 1
        self.assertEqual(element_order(G, g), k)
        self.assertEqual(G.order % k, 0)
        self.assertTrue(G.scale(k, g).is_identity)


class SubgroupTests(SimpleTestCase):
    """Подгруппы и их цикличность"""

    def test_generated(self):
        G = GroupSpec(2, (2, 2))
        H = subgroup_generated(G, [GroupElement((1, 0)), GroupElement((0, 1))])
        self.assertEqual(H.order, 4)
        self.assertFalse(H.is_cyclic)

        C = subgroup_generated(GroupSpec(2, (4,)), [GroupElement((2,))])
        self.assertEqual(C.order, 2)
        self.assertTrue(C.is_cyclic)

        G3 = GroupSpec(2, (2, 2, 2))
        H3 = subgroup_generated(G3, [GroupElement((1, 1, 0)), GroupElement((0, 1, 1))])
        self.assertEqual(H3.order, 4)
        self.assertFalse(H3.is_cyclic)

    def test_subgroup_counts(self):
        """Число подгрупп: 5 для (2,2), 2 для (p,), 16 для (2,2,2)"""
        print("\nПодсчёт подгрупп")
        self.assertEqual(len(enumerate_subgroups(GroupSpec(2, (2, 2)))), 5)
        self.assertEqual(len(enumerate_subgroups(GroupSpec(3, (3,)))), 2)
        self.assertEqual(len(enumerate_subgroups(GroupSpec(2, (2, 2, 2)))), 16)

    def test_brute_force_count(self):
        """Сравнение с перебором всех замкнутых подмножеств для (2,2)"""
        G = GroupSpec(2, (2, 2))
        elements = enumerate_elements(G)
        closed = 0
        for size in range(1, len(elements) + 1):
            for subset in combinations(elements, size):
                s = set(subset)
                if G.identity in s and all(G.add(a, b) in s for a, b in product(s, s)):
                    closed += 1
        self.assertEqual(closed, len(enumerate_subgroups(G)))

    def test_subgroups_reclose(self):
        """Каждая подгруппа замкнута, тривиальная и вся группа присутствуют"""
        for p, orders in GROUPS:
            G = GroupSpec(p, orders)
            subgroups = enumerate_subgroups(G)
            keys = {H.key for H in subgroups}
            self.assertEqual(len(keys), len(subgroups))
            self.assertIn(frozenset({G.identity}), keys)
            self.assertIn(frozenset(enumerate_elements(G)), keys)
            for H in subgroups:
                self.assertEqual(G.order % H.order, 0)
                if H.generators:
                    self.assertEqual(subgroup_generated(G, H.generators).key, H.key)
