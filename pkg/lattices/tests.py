from itertools import product

import numpy as np
import sympy
from django.test import SimpleTestCase
from hypothesis import given, settings as hsettings, strategies as st

from groups.models import GroupSpec
from groups.services import enumerate_elements, enumerate_subgroups, whole_group, trivial_subgroup
from .exceptions import NoSolution
from .linalg import (
    IntegerSystem, hermite_normal_form, identity, integer_matrix, kernel_basis,
    rank_mod_p, smith_normal_form, solve_integer_system,
)
from .models import LatticeMap
from .services import (
    augmentation_ideal, direct_sum, fixed_sublattice, norm_map, p2_and_a2,
    regular_lattice, trivial_lattice,
)

small_matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=m, max_size=m,
        )
    )
)


def sympy_det(A):
    return sympy.Matrix(integer_matrix(A).tolist()).det()


class SmithFormTests(SimpleTestCase):
    """Форма Смита"""

    def test_diag(self):
        snf = smith_normal_form([[2, 0], [0, 3]])
        self.assertEqual(snf.invariant_factors, [1, 6])

    def test_zero(self):
        snf = smith_normal_form([[0, 0], [0, 0]])
        self.assertEqual(snf.rank, 0)
        self.assertTrue((snf.U == identity(2)).all())
        self.assertTrue((snf.V == identity(2)).all())

    @given(st.lists(st.lists(st.integers(-9, 9), min_size=5, max_size=5), min_size=5, max_size=5))
    @hsettings(max_examples=40, deadline=None)
    def test_determinant_oracle(self, rows):
        """det(D) = ±det(A), U и V унимодулярны, делимость множителей"""
        snf = smith_normal_form(rows)
        self.assertEqual(abs(sympy_det(snf.D)), abs(sympy_det(rows)))
        self.assertIn(sympy_det(snf.U), (1, -1))
        self.assertIn(sympy_det(snf.V), (1, -1))
        factors = snf.invariant_factors
        for a, b in zip(factors, factors[1:]):
            self.assertEqual(b % a, 0)

    @given(small_matrices, st.sampled_from([2, 3, 5]))
    @hsettings(max_examples=40, deadline=None)
    def test_rank_mod_p(self, rows, p):
        """Ранг над F_p - число инвариантных множителей, не делящихся на p"""
        factors = smith_normal_form(rows).invariant_factors
        self.assertEqual(rank_mod_p(rows, p), sum(1 for d in factors if d % p))
        self.assertEqual(rank_mod_p([[2, 0], [0, 3]], 2), 1)

    def test_hermite_is_deterministic(self):
        """Одна решётка - одна форма Эрмита"""
        A = [[2, 4, 6], [1, 1, 1]]
        B = [[1, 1, 1], [3, 5, 7]]
        self.assertTrue((hermite_normal_form(A) == hermite_normal_form(B)).all())


class SolverTests(SimpleTestCase):
    """Решение целочисленных систем"""

    def test_identity(self):
        x = solve_integer_system(identity(3), [4, -1, 7])
        self.assertEqual(list(x), [4, -1, 7])

    def test_parity(self):
        with self.assertRaises(NoSolution):
            solve_integer_system([[2]], [3])

    @given(small_matrices, st.data())
    @hsettings(max_examples=60, deadline=None)
    def test_brute_force_oracle(self, rows, data):
        """Перебор по кубу [−2,2]ⁿ против формы Смита"""
        A = integer_matrix(rows)
        m, n = A.shape
        if data.draw(st.booleans()):
            x0 = data.draw(st.lists(st.integers(-2, 2), min_size=n, max_size=n))
            t = A.dot(integer_matrix(x0).reshape(-1))
        else:
            t = integer_matrix(data.draw(st.lists(st.integers(-4, 4), min_size=m, max_size=m))).reshape(-1)
        box = any((A.dot(np.array(x, dtype=object)) == t).all() for x in product(range(-2, 3), repeat=n))
        try:
            x = solve_integer_system(A, t)
        except NoSolution:
            self.assertFalse(box)
        else:
            self.assertTrue((A.dot(x) == t).all())

    def test_cokernel_order(self):
        system = IntegerSystem([[4, 0], [0, 6]])
        self.assertEqual(system.cokernel_order([2, 3]), 2)
        self.assertEqual(system.cokernel_order([1, 1]), 12)
        self.assertEqual(system.cokernel_order([0, 0]), 1)

    def test_kernel(self):
        K = kernel_basis([[1, 1, 1]])
        self.assertEqual(K.shape, (3, 2))
        self.assertTrue((integer_matrix([[1, 1, 1]]).dot(K) == 0).all())


class ConstructionTests(SimpleTestCase):
    """ℤ[G], I[G], P₂(G), A₂(G)"""

    def test_regular(self):
        ZG = regular_lattice(GroupSpec(2, (2, 2)))
        self.assertEqual(ZG.rank, 4)
        for A in ZG.actions:
            self.assertEqual(sorted(A.sum(axis=0).tolist()), [1, 1, 1, 1])
            self.assertTrue((A.dot(A) == identity(4)).all())
        Z24 = regular_lattice(GroupSpec(2, (2, 4)))
        A = Z24.actions[1]
        self.assertFalse((A.dot(A) == identity(8)).all())
        self.assertTrue((A.dot(A).dot(A).dot(A) == identity(8)).all())

    def test_augmentation(self):
        for orders, rank in (((2, 2), 3), ((2, 2, 2), 7)):
            IG, incl = augmentation_ideal(GroupSpec(2, orders))
            self.assertEqual(IG.rank, rank)
            self.assertTrue(incl.is_equivariant())
            self.assertTrue((incl.matrix.sum(axis=0) == 0).all())

    def test_exact_sequence(self):
        """Ранги и точность 0 → A₂ → P₂ → I[G] → 0"""
        print("\nПостроение A₂(G)")
        for p, orders, rank in ((2, (2, 2), 5), (2, (2, 2, 2), 17), (3, (3, 3), 10), (2, (2, 4), 9)):
            seq = p2_and_a2(GroupSpec(p, orders))
            self.assertEqual(seq.A2.rank, rank)
            self.assertEqual(seq.P2.rank, seq.A2.rank + seq.IG.rank)
            self.assertTrue((seq.j.matrix.dot(seq.i.matrix) == 0).all())
            self.assertTrue(seq.i.is_equivariant())
            self.assertEqual(smith_normal_form(seq.i.matrix).invariant_factors, [1] * rank)

    def test_fixed_and_norm(self):
        G = GroupSpec(2, (2, 2))
        ZG = regular_lattice(G)
        fixed = fixed_sublattice(ZG, whole_group(G))
        self.assertEqual(fixed.shape[1], 1)
        self.assertEqual(sorted(abs(x) for x in fixed[:, 0]), [1, 1, 1, 1])
        self.assertEqual(fixed_sublattice(ZG, trivial_subgroup(G)).shape[1], 4)
        N = norm_map(ZG, whole_group(G)).matrix
        self.assertTrue((N == 1).all())
        self.assertTrue((norm_map(ZG, trivial_subgroup(G)).matrix == identity(4)).all())

        Z = trivial_lattice(G)
        self.assertEqual(norm_map(Z, whole_group(G)).matrix[0, 0], 4)

    def test_fixed_brute_force(self):
        """I[G]^G для (2,2): перебор по кубу против ядра"""
        G = GroupSpec(2, (2, 2))
        IG, _ = augmentation_ideal(G)
        for H in enumerate_subgroups(G):
            basis = fixed_sublattice(IG, H)
            system = IntegerSystem(basis) if basis.shape[1] else None
            for v in product(range(-2, 3), repeat=IG.rank):
                v = np.array(v, dtype=object)
                fixed = all((IG.action(h).dot(v) == v).all() for h in H.elements)
                in_span = system.contains(v) if system else not any(v)
                self.assertEqual(fixed, in_span)

    def test_norm_lands_in_fixed(self):
        G = GroupSpec(2, (2, 4))
        seq = p2_and_a2(G)
        for H in enumerate_subgroups(G):
            N = norm_map(seq.A2, H).matrix
            for h in H.elements:
                self.assertTrue((seq.A2.action(h).dot(N) == N).all())

    def test_direct_sum_map(self):
        G = GroupSpec(3, (3,))
        ZG = regular_lattice(G)
        S = direct_sum(ZG, trivial_lattice(G)).validate()
        self.assertEqual(S.rank, 4)
        proj = LatticeMap(np.hstack([identity(3), np.zeros((3, 1), dtype=object)]), S, ZG)
        self.assertTrue(proj.is_equivariant())
        self.assertEqual(len(enumerate_elements(G)), 3)
