import numpy as np
from django.test import SimpleTestCase, tag

from cohomology.services import (
    c1_cochain, class_order, coboundary, connecting_homomorphism, is_coboundary,
)
from groups.models import GroupSpec
from groups.services import enumerate_elements
from lattices.linalg import identity, smith_normal_form, zeros
from lattices.services import direct_sum, p2_and_a2
from .services import (
    build_canonical, build_mstar, build_phi, c2_in_mstar, mstar_class_order, mstar_embedding,
    mstar_trivializing_cochain,
)

GROUPS = [GroupSpec(2, (2, 2)), GroupSpec(2, (2, 4)), GroupSpec(3, (3, 3))]


class PhiTests(SimpleTestCase):
    """Коцепь φ"""

    def test_identity_and_generator(self):
        """φ(1) = 0, φ(σ₁) = d₁"""
        for G in GROUPS:
            seq = p2_and_a2(G)
            phi = build_phi(G)
            self.assertFalse(any(phi.value(G.identity)))
            expected = zeros(seq.P2.rank)
            expected[seq.p2_index(0, G.identity)] = 1
            self.assertEqual(list(phi.value(G.generator(0))), list(expected))

    def test_telescope(self):
        """j(φ(g)) = g − 1 на всей группе (2,2,2)"""
        G = GroupSpec(2, (2, 2, 2))
        seq = p2_and_a2(G)
        phi = build_phi(G)
        for g in enumerate_elements(G)[1:]:
            w = seq.j(phi.value(g))
            self.assertEqual(sum(w), 1)
            self.assertEqual(w[G.index(g) - 1], 1)


class CocycleTests(SimpleTestCase):
    """c₂ = δφ"""

    def test_normalized(self):
        for G in GROUPS:
            c2 = build_canonical(G).c2
            for g in enumerate_elements(G):
                self.assertFalse(any(c2.value(G.identity, g)))
                self.assertFalse(any(c2.value(g, G.identity)))

    def test_generator_values(self):
        """c₂(σᵢ, σⱼ) = 0 при i < j и c₂(σᵢ, σᵢ^{nᵢ−1}) = bᵢ"""
        for G in GROUPS + [GroupSpec(2, (2, 2, 2))]:
            data = build_canonical(G)
            for i in range(G.r):
                s = G.generator(i)
                for j in range(i + 1, G.r):
                    self.assertFalse(any(data.c2.value(s, G.generator(j))))
                last = G.scale(G.orders[i] - 1, s)
                self.assertEqual(list(data.c2.value(s, last)), list(data.b[i]))

    def test_powers_of_one_generator(self):
        """c₂(σᵢᵃ, σᵢᵇ) = 0 при a + b < nᵢ"""
        for G in GROUPS:
            c2 = build_canonical(G).c2
            for i, n in enumerate(G.orders):
                s = G.generator(i)
                for a in range(n):
                    for b in range(n - a):
                        self.assertFalse(any(c2.value(G.scale(a, s), G.scale(b, s))))

    def test_class_order(self):
        """|[c₂]| = |G| в H²(G, A₂(G))"""
        print("\nПорядок класса c₂")
        for G in GROUPS:
            self.assertEqual(class_order(build_canonical(G).c2), G.order)

    @tag('slow')
    def test_class_order_rank_three(self):
        G = GroupSpec(2, (2, 2, 2))
        self.assertEqual(class_order(build_canonical(G).c2), 8)

    def test_connecting_image(self):
        """Связывающий образ [c₁] совпадает с [c₂] с точностью до кограницы"""
        for G in GROUPS:
            data = build_canonical(G)
            image = connecting_homomorphism(data.sequence, c1_cochain(G))
            self.assertTrue(is_coboundary(image - data.c2))


class VectorTests(SimpleTestCase):
    """uᵢⱼ и bᵢ"""

    def test_antisymmetry(self):
        for G in GROUPS + [GroupSpec(2, (2, 2, 2))]:
            data = build_canonical(G)
            for i in range(G.r):
                self.assertFalse(any(data.u[i][i]))
                for j in range(G.r):
                    self.assertEqual(list(data.u[i][j]), list(-data.u[j][i]))

    def test_in_kernel(self):
        """i(uᵢⱼ) и i(bᵢ) лежат в ядре j"""
        G = GroupSpec(2, (2, 4))
        data = build_canonical(G)
        seq = data.sequence
        for v in [data.u[0][1], data.b[0], data.b[1]]:
            self.assertFalse(any(seq.j(seq.i(v))))
            self.assertTrue(any(v))

    def test_serialization(self):
        d = build_canonical(GroupSpec(2, (2, 2))).to_dict()
        self.assertEqual(d['A2']['rank'], 5)
        self.assertIn('1,2', d['u'])
        self.assertEqual(len(d['b']), 2)
        self.assertEqual(len(d['c2']['table']), 16)


class TwistedLatticeTests(SimpleTestCase):
    """M*_{p[c₂]}(G)"""

    def test_klein_orders(self):
        """Для (2,2) матрицы действия имеют порядок 2"""
        T = build_mstar(GroupSpec(2, (2, 2)))
        self.assertEqual(T.rank, 8)
        for A in T.underlying.actions:
            self.assertTrue((A.dot(A) == identity(8)).all())

    def test_untwisted_is_direct_sum(self):
        G = GroupSpec(3, (3, 3))
        T = build_mstar(G, twisted=False)
        data = build_canonical(G)
        S = direct_sum(data.A2, data.IG)
        for A, B in zip(T.underlying.actions, S.actions):
            self.assertTrue((A == B).all())

    def test_action_formula(self):
        """g(0, g′−1) = (p·c₂(g, g′), g(g′−1)) для всех g, не только образующих"""
        for G in GROUPS:
            T = build_mstar(G)
            ra = T.split[0]
            c2 = build_canonical(G).c2
            for g in enumerate_elements(G):
                block = T.underlying.action(g)[:ra, ra:]
                for k, h in enumerate(enumerate_elements(G)[1:]):
                    self.assertEqual(list(block[:, k]), list(G.p * c2.value(g, h)))

    def test_quotient_is_augmentation_ideal(self):
        G = GroupSpec(2, (2, 4))
        T = build_mstar(G)
        self.assertTrue(T.projection(build_canonical(G).IG).is_equivariant())

    def test_embedding(self):
        """θ эквивариантно и j∘θ = (0 | p·I)"""
        for G in GROUPS:
            theta = mstar_embedding(G)
            T = build_mstar(G)
            seq = build_canonical(G).sequence
            J = seq.j.matrix.dot(theta.matrix)
            ra, ri = T.split
            self.assertFalse(np.any(J[:, :ra] != 0))
            self.assertTrue((J[:, ra:] == G.p * identity(ri)).all())
            snf = smith_normal_form(theta.matrix)
            self.assertEqual(snf.rank, T.rank)
            index = 1
            for d in snf.invariant_factors:
                index *= d
            self.assertEqual(index, G.p ** ri)

    def test_c2_has_order_p_in_mstar(self):
        """p·c₂ = δψ, ψ(g) = (0, g − 1)"""
        for G in (GroupSpec(2, (2, 2)), GroupSpec(3, (3, 3))):
            T = build_mstar(G)
            c = c2_in_mstar(T)
            psi = mstar_trivializing_cochain(T)
            self.assertTrue(((G.p * c).values == coboundary(psi).values).all())
            self.assertEqual(class_order(c), G.p)

    def test_mstar_class_order_shortcut(self):
        """Ограничение на ⟨σᵢ⟩ даёт тот же порядок, что и полный расчёт"""
        for G in (GroupSpec(2, (2, 2)), GroupSpec(3, (3, 3))):
            T = build_mstar(G)
            self.assertEqual(mstar_class_order(T), class_order(c2_in_mstar(T)))
