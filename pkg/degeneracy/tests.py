import itertools

import numpy as np
from django.test import SimpleTestCase, tag
from hypothesis import given, settings as hsettings, strategies as st

from cohomology.models import Cochain
from cohomology.services import coboundary_matrix
from crossedproducts.services import (
    commutator_u, delta, delta_prime, presentation_from_cocycle, rebase, trivial_presentation,
)
from groups.models import GroupSpec
from groups.services import element_order, enumerate_elements, subgroup_generated, whole_group
from lattices.linalg import identity, integer_matrix, kernel_basis, zeros
from lattices.models import GLattice
from lattices.services import direct_sum, regular_lattice
from .exceptions import NotAWitness
from .models import NO_MONOMIAL_WITNESS, YES, DegeneracyWitness
from .services import (
    centralizer_split_hint, elementary_subgroup_hint, is_degenerate, is_strongly_degenerate,
    mod_p_obstruction, noncyclic_pairs, reduce_witness_to_order_p, strong_witness_central_power,
    verify_degenerate_witness, verify_strong_witness,
)

KLEIN = GroupSpec(2, (2, 2))


def planted(G, draw, lattice=None):
    """Перебазированное расщепимое представление: вырождено и сильно вырождено."""
    M = lattice or regular_lattice(G)
    k = [draw(st.lists(st.integers(-2, 2), min_size=M.rank, max_size=M.rank)) for _ in range(G.r)]
    return rebase(trivial_presentation(M), k)


def character_lattice(signs):
    """Диагональная решётка Клейна: столбец signs[c] = (ε₁, ε₂) для координаты c."""
    actions = tuple(
        integer_matrix(np.diag([s[i] for s in signs]).tolist()) for i in range(2)
    )
    return GLattice(KLEIN, actions, label='chars').validate()


def swap_lattice():
    """ℤ², σ₁ переставляет координаты, σ₂ тривиально."""
    return GLattice(KLEIN, (integer_matrix([[0, 1], [1, 0]]), identity(2)), label='swap').validate()


klein_lattices = st.one_of(
    st.lists(st.sampled_from([(1, 1), (-1, 1), (1, -1), (-1, -1)]), min_size=1, max_size=3).map(character_lattice),
    st.just(swap_lattice()),
    st.just(direct_sum(swap_lattice(), character_lattice([(-1, -1)]))),
)


def random_cocycle(M, draw):
    K = kernel_basis(coboundary_matrix(M, 2, whole_group(KLEIN)))
    coords = draw(st.lists(st.integers(-2, 2), min_size=K.shape[1], max_size=K.shape[1]))
    flat = K.dot(np.array(coords, dtype=object)) if K.shape[1] else zeros(K.shape[0])
    return Cochain.from_flat(M, 2, flat, whole_group(KLEIN).elements)


def box_witness(P, m, n, radius=2):
    """Перебор a, b в кубе [−radius, radius]^rank."""
    rank = P.rank
    Am = P.lattice.action(m) - identity(rank)
    An = P.lattice.action(n) - identity(rank)
    box = np.array(list(itertools.product(range(-radius, radius + 1), repeat=rank)), dtype=object)
    left = box.dot(Am.T)
    right = {tuple(v) for v in box.dot(An.T)}
    u = commutator_u(P, m, n)
    return any(tuple(u - v) in right for v in left)


class DegenerateTests(SimpleTestCase):
    """Вырожденность"""

    def test_commutative_gives_zero_witness(self):
        """u ≡ 0 - свидетель нулевой"""
        P = trivial_presentation(regular_lattice(KLEIN))
        verdict = is_degenerate(P)
        self.assertEqual(verdict.answer, YES)
        self.assertFalse(any(verdict.witness.a))
        self.assertFalse(any(verdict.witness.b))
        self.assertEqual(verdict.pairs_examined, 1)

    def test_canonical_models_have_no_witness(self):
        """Δ′ над A₂ и Δ над M* при r = 2: u₁₂ ∉ I_G·M"""
        print("\nВырожденность Δ′(G) и Δ(G) при r = 2")
        for G in (KLEIN, GroupSpec(3, (3, 3))):
            for P in (delta_prime(G), delta(G)):
                verdict = is_degenerate(P)
                self.assertEqual(verdict.answer, NO_MONOMIAL_WITNESS, P.label)
                self.assertIsNone(verdict.witness)

    def test_p2_verdicts_pinned(self):
        """p = 2: у Δ(G) нет мономиального свидетеля, на каждой паре препятствие по модулю 2"""
        for G in (KLEIN, GroupSpec(2, (2, 4)), GroupSpec(2, (2, 2, 2))):
            P = delta(G)
            pairs = noncyclic_pairs(G)
            verdict = is_degenerate(P)
            self.assertEqual(verdict.answer, NO_MONOMIAL_WITNESS, G.label())
            self.assertEqual(verdict.pairs_examined, len(pairs))
            for m, n in pairs:
                self.assertTrue(mod_p_obstruction(P, m, n), (G.label(), str(m), str(n)))

    def test_pair_counts(self):
        """Нециклических пар: 3 в (2,2), 15 в (2,4), 21 в (2,2,2)"""
        for G, expected in ((KLEIN, 3), (GroupSpec(2, (2, 4)), 15), (GroupSpec(2, (2, 2, 2)), 21)):
            self.assertEqual(len(noncyclic_pairs(G)), expected)

    def test_obstruction_absent_for_witness(self):
        """Найденный свидетель исключает препятствие по модулю p"""
        P = rebase(trivial_presentation(regular_lattice(KLEIN)), [[1, 0, 0, 0], [0, 1, 0, 0]])
        w = is_degenerate(P).witness
        self.assertTrue(verify_degenerate_witness(P, w))
        self.assertFalse(mod_p_obstruction(P, w.m, w.n))

    @given(st.data())
    @hsettings(max_examples=10, deadline=None)
    def test_planted_is_degenerate(self, data):
        P = planted(GroupSpec(2, (2, 4)), data.draw)
        verdict = is_degenerate(P)
        self.assertTrue(verdict.is_yes)
        self.assertTrue(verify_degenerate_witness(P, verdict.witness))

    @given(klein_lattices, st.data())
    @hsettings(max_examples=30, deadline=None)
    def test_agrees_with_box_search(self, M, data):
        """Нашёлся свидетель перебором - значит, вердикт yes"""
        P = presentation_from_cocycle(random_cocycle(M, data.draw))
        verdict = is_degenerate(P)
        elements = enumerate_elements(KLEIN)[1:]
        found = any(box_witness(P, m, n) for m, n in itertools.combinations(elements, 2))
        if found:
            self.assertEqual(verdict.answer, YES)
        if verdict.answer == NO_MONOMIAL_WITNESS:
            self.assertFalse(found)

    @tag('slow')
    def test_rank_three_odd(self):
        """Δ(3,3,3) над M*: свидетеля нет ни на одной из нециклических пар"""
        G = GroupSpec(3, (3, 3, 3))
        verdict = is_degenerate(delta(G))
        self.assertEqual(verdict.answer, NO_MONOMIAL_WITNESS)
        self.assertEqual(verdict.pairs_examined, len(noncyclic_pairs(G)))


class StrongTests(SimpleTestCase):
    """Сильная вырожденность"""

    @given(st.data())
    @hsettings(max_examples=10, deadline=None)
    def test_planted_is_strongly_degenerate(self, data):
        G = GroupSpec(2, (2, 4))
        P = planted(G, data.draw)
        verdict = is_strongly_degenerate(P)
        self.assertTrue(verdict.is_yes)
        w = verdict.witness
        self.assertEqual(element_order(G, w.m), 2)
        self.assertTrue(verify_strong_witness(P, w))

    @given(st.data())
    @hsettings(max_examples=10, deadline=None)
    def test_strong_implies_degenerate(self, data):
        """(l, kᵢ) - свидетель вырожденности на паре (σᵢ, σ^m̄)"""
        G = GroupSpec(2, (2, 4))
        P = planted(G, data.draw)
        w = is_strongly_degenerate(P).witness
        used = 0
        for i in range(G.r):
            if subgroup_generated(G, [G.generator(i), w.m]).is_cyclic:
                continue
            used += 1
            self.assertTrue(verify_degenerate_witness(P, DegeneracyWitness(G.generator(i), w.m, w.l, w.k[i])))
        self.assertGreater(used, 0)

    def test_canonical_klein(self):
        self.assertEqual(is_strongly_degenerate(delta(KLEIN)).answer, NO_MONOMIAL_WITNESS)

    @tag('slow')
    def test_rank_three_mstar(self):
        """Δ(2,2,2) над M* не сильно вырождена"""
        self.assertEqual(is_strongly_degenerate(delta(GroupSpec(2, (2, 2, 2)))).answer, NO_MONOMIAL_WITNESS)

    def test_central_power(self):
        """(l⁻¹ z^m̄)^p - центральный скаляр"""
        P = rebase(trivial_presentation(regular_lattice(KLEIN)), [[1, 0, 0, 0], [0, 0, 2, -1]])
        w = is_strongly_degenerate(P).witness
        report = strong_witness_central_power(P, w)
        self.assertTrue(report['central'])
        self.assertEqual(report['power']['zexp'], [0, 0])

    def test_elementary_subgroup_hint(self):
        """Наименьшая пара i < j, для которой σ^m̄ не лежит в ⟨σᵢ, σⱼ⟩"""
        G = GroupSpec(2, (2, 2, 2))
        P = trivial_presentation(regular_lattice(G))
        w = is_strongly_degenerate(P).witness
        expected = next(
            [i + 1, j + 1] for i, j in itertools.combinations(range(3), 2)
            if w.m not in subgroup_generated(G, [G.generator(i), G.generator(j)])
        )
        self.assertEqual(elementary_subgroup_hint(P, w)['pair'], expected)

    def test_elementary_subgroup_hint_small(self):
        """В (2,4) элементы порядка 2 дают только группу Клейна"""
        P = trivial_presentation(regular_lattice(GroupSpec(2, (2, 4))))
        self.assertIsNone(elementary_subgroup_hint(P, is_strongly_degenerate(P).witness))


class ReductionTests(SimpleTestCase):
    """Сведение свидетеля к паре элементов порядка p"""

    def test_already_order_p(self):
        P = trivial_presentation(regular_lattice(KLEIN))
        w = is_degenerate(P).witness
        reduced = reduce_witness_to_order_p(P, w)
        self.assertEqual((reduced.m, reduced.n), (w.m, w.n))

    def test_cyclic_four_squared(self):
        """(4,4), u = 0: пара (1,0), (0,1) сводится к (2,0), (0,2)"""
        G = GroupSpec(2, (4, 4))
        P = trivial_presentation(regular_lattice(G))
        zero = zeros(P.rank)
        w = DegeneracyWitness(G.generator(0), G.generator(1), zero, zero)
        reduced = reduce_witness_to_order_p(P, w)
        self.assertEqual(reduced.m.exps, (2, 0))
        self.assertEqual(reduced.n.exps, (0, 2))
        self.assertFalse(any(reduced.a))
        self.assertFalse(any(reduced.b))

    @given(st.data())
    @hsettings(max_examples=10, deadline=None)
    def test_planted(self, data):
        G = GroupSpec(2, (4, 2))
        P = planted(G, data.draw)
        w = is_degenerate(P).witness
        reduced = reduce_witness_to_order_p(P, w)
        self.assertEqual(element_order(G, reduced.m), 2)
        self.assertEqual(element_order(G, reduced.n), 2)
        self.assertTrue(verify_degenerate_witness(P, reduced))

    def test_corrupted_witness(self):
        P = rebase(trivial_presentation(regular_lattice(KLEIN)), [[1, 0, 0, 0], [0, 1, 0, 0]])
        w = is_degenerate(P).witness
        broken = DegeneracyWitness(w.m, w.n, w.a + identity(P.rank)[:, 0], w.b)
        with self.assertRaises(NotAWitness):
            reduce_witness_to_order_p(P, broken)

    def test_centralizer_hint(self):
        P = rebase(trivial_presentation(regular_lattice(KLEIN)), [[1, -1, 0, 2], [0, 0, 1, 0]])
        w = is_degenerate(P).witness
        hint = centralizer_split_hint(P, w)
        self.assertTrue(hint['commute'])
        self.assertIn('= 4', hint['annotation'])
