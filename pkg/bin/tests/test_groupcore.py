import itertools
import os
import unittest
from unittest import mock

import numpy as np
from corpus import group_corpus, load_demo
from groupcore import (
    AlgebraError,
    NoIdentityError,
    NoInverseError,
    NonAssociativeError,
    NotActionError,
    NotHomomorphismError,
    NotNormalError,
    OrderTooLargeError,
    RowNotAutomorphismError,
    Subgroup,
    TupleGroup,
    abelianization,
    alternating,
    commutator_subgroup,
    cyclic,
    describe_group,
    dihedral,
    direct_product,
    find_isomorphism,
    hom_violation,
    image,
    is_isomorphic,
    kernel,
    klein4,
    make_action,
    make_group,
    make_hom,
    max_order,
    normal_closure,
    quaternion8,
    quotient,
    semidirect,
    set_max_order,
    symmetric,
    trivial,
)

# Latin square with identity 0 where every element is its own inverse; no
# group of order 5 has that property, so it cannot be associative.
LOOP5 = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


class TestGroups(unittest.TestCase):
    """Test group construction and validation."""

    def test_builtins(self):
        c4 = cyclic(4)
        self.assertEqual(c4.order, 4)
        self.assertEqual(c4.op(1, 3), 0)
        self.assertTrue(c4.is_abelian())

        s3 = symmetric(3)
        self.assertEqual(s3.order, 6)
        self.assertFalse(s3.is_abelian())
        self.assertEqual(sorted(s3.element_orders.tolist()), [1, 2, 2, 2, 3, 3])

        self.assertEqual(alternating(4).order, 12)
        self.assertEqual(dihedral(4).order, 8)
        self.assertEqual(quaternion8().order, 8)
        self.assertEqual(klein4().order, 4)
        for g in (c4, s3, quaternion8(), dihedral(5), alternating(4)):
            self.assertEqual(make_group(g.mul).order, g.order)

    def test_identity_relabeled(self):
        g = make_group([[1, 0], [0, 1]])
        np.testing.assert_array_equal(g.mul, [[0, 1], [1, 0]])

    def test_validation_errors(self):
        with self.assertRaises(NonAssociativeError):
            make_group(LOOP5)
        with self.assertRaises(NoIdentityError):
            make_group([[1, 1], [1, 1]])
        with self.assertRaises(NoInverseError) as cm:
            make_group([[0, 1], [1, 1]])
        self.assertEqual(cm.exception.witness, (1,))
        with self.assertRaises(AlgebraError) as cm:
            make_group([[0, 2], [1, 0]])
        self.assertEqual(cm.exception.witness, (0, 1))
        with self.assertRaises(AlgebraError):
            make_group([[0, 1, 2], [1, 2, 0]])

    def test_inverse_and_conjugation(self):
        s3 = symmetric(3)
        for x in s3.elements:
            self.assertEqual(s3.op(x, s3.inverse(x)), 0)
        for a, b in itertools.product(s3.elements, repeat=2):
            expected = s3.op(s3.op(a, b), s3.op(s3.inverse(a), s3.inverse(b)))
            self.assertEqual(s3.commutator(a, b), expected)
            self.assertEqual(s3.conjugate(a, b), s3.op(s3.op(a, b), s3.inverse(a)))


class TestMaps(unittest.TestCase):
    """Test homomorphisms and actions."""

    def test_hom(self):
        c4, c2 = cyclic(4), cyclic(2)
        f = make_hom(c4, c2, [0, 1, 0, 1])
        self.assertEqual(f(3), 1)
        self.assertEqual(kernel(f).elements.tolist(), [0, 2])
        self.assertEqual(image(f).order, 2)
        with self.assertRaises(NotHomomorphismError) as cm:
            make_hom(c4, c2, [0, 1, 1, 0])
        self.assertEqual(cm.exception.witness, (1, 1))
        self.assertIsNone(hom_violation(c4, c2, np.array([0, 1, 0, 1])))

    def test_action(self):
        c2, c3 = cyclic(2), cyclic(3)
        act = make_action(c2, c3, [[0, 1, 2], [0, 2, 1]])
        self.assertEqual(act(1, 1), 2)
        with self.assertRaises(RowNotAutomorphismError) as cm:
            make_action(c2, c3, [[0, 1, 2], [0, 1, 1]])
        self.assertEqual(cm.exception.witness, (1,))
        with self.assertRaises(NotActionError) as cm:
            make_action(c2, c3, [[0, 2, 1], [0, 1, 2]])
        self.assertEqual(cm.exception.witness, (0, 1))

    def test_semidirect(self):
        act = make_action(cyclic(2), cyclic(3), [[0, 1, 2], [0, 2, 1]])
        sd = semidirect(act)
        self.assertEqual(sd.result.order, 6)
        self.assertFalse(sd.result.is_abelian())
        self.assertTrue(is_isomorphic(sd.result, symmetric(3)))
        k, a = sd.unpair(sd.pair(2, 1))
        self.assertEqual((int(k), int(a)), (2, 1))
        self.assertTrue(sd.projection.compose(sd.kernel_injection).is_trivial())

    def test_semidirect_table(self):
        acts = [
            make_action(cyclic(2), cyclic(3), [[0, 1, 2], [0, 2, 1]]),
            load_demo("square-a3-s3").act_m,
            make_action(cyclic(2), cyclic(4), [[0, 1, 2, 3], [0, 3, 2, 1]]),
        ]
        for act in acts:
            sd = semidirect(act)
            K, A = act.target, act.actor
            with self.subTest(orders=(K.order, A.order)):
                for k1, a1, k2, a2 in itertools.product(K.elements, A.elements, K.elements, A.elements):
                    expected = sd.pair(K.op(k1, act(a1, k2)), A.op(a1, a2))
                    got = sd.result.mul[sd.pair(k1, a1), sd.pair(k2, a2)]
                    self.assertEqual(int(got), int(expected))


class TestSubgroups(unittest.TestCase):
    """Test subgroups and quotients."""

    def test_quotients(self):
        s3 = symmetric(3)
        a3 = commutator_subgroup(s3)
        self.assertEqual(a3.order, 3)
        self.assertTrue(a3.is_normal())
        q, proj = quotient(s3, a3)
        self.assertEqual(q.order, 2)
        self.assertEqual(proj(0), 0)
        self.assertEqual(abelianization(s3)[0].order, 2)
        self.assertEqual(abelianization(quaternion8())[0].order, 4)

    def test_abelianization_kernel(self):
        for g in group_corpus():
            with self.subTest(group=g.name):
                q, proj = abelianization(g)
                self.assertTrue(q.is_abelian())
                np.testing.assert_array_equal(kernel(proj).elements, commutator_subgroup(g).elements)
                self.assertEqual(q.order * commutator_subgroup(g).order, g.order)

    def test_normal_closure_quotient(self):
        for g in group_corpus():
            seeds = [[x] for x in g.elements]
            if g.order <= 8:
                seeds += [list(pair) for pair in itertools.combinations(g.elements, 2)]
            for seed in seeds:
                with self.subTest(group=g.name, seed=seed):
                    closure = normal_closure(g, seed)
                    self.assertTrue(closure.is_normal())
                    self.assertTrue(all(x in closure for x in seed))
                    q, _ = quotient(g, closure)
                    self.assertEqual(q.order * closure.order, g.order)

    def test_not_normal(self):
        s3 = symmetric(3)
        # index 1 is the transposition (0 2 1)
        sub = Subgroup(s3, [0, 1])
        self.assertFalse(sub.is_normal())
        with self.assertRaises(NotNormalError):
            quotient(s3, sub)
        with self.assertRaises(AlgebraError):
            sub.index_of(3)

    def test_tuple_group(self):
        c2 = cyclic(2)
        rows = [(0, 0), (1, 1)]
        diag = TupleGroup([c2, c2], rows)
        self.assertEqual(diag.order, 2)
        self.assertEqual(int(diag.index_of([1, 1])), 1)
        with self.assertRaises(AlgebraError):
            TupleGroup([c2, c2], [(1, 1)])
        with self.assertRaises(AlgebraError):
            TupleGroup([c2, c2], [(0, 0), (1, 0), (0, 1)])


class TestIsomorphism(unittest.TestCase):
    """Test the isomorphism search and its bound."""

    def tearDown(self):
        set_max_order(None)

    def test_pairs(self):
        self.assertTrue(is_isomorphic(direct_product(cyclic(3), cyclic(4)), cyclic(12)))
        self.assertFalse(is_isomorphic(direct_product(cyclic(2), cyclic(4)), cyclic(8)))
        self.assertFalse(is_isomorphic(dihedral(4), quaternion8()))
        self.assertFalse(is_isomorphic(dihedral(6), alternating(4)))
        iso = find_isomorphism(dihedral(3), symmetric(3))
        self.assertIsNotNone(iso)
        self.assertTrue(iso.is_bijective())
        self.assertIsNone(hom_violation(iso.dom, iso.cod, iso.map))

    def test_equivalence_on_corpus(self):
        groups = group_corpus()
        pairs = itertools.product(enumerate(groups), repeat=2)
        rel = {(i, j): is_isomorphic(a, b) for (i, a), (j, b) in pairs}
        n = len(groups)
        for i in range(n):
            self.assertTrue(rel[i, i])
        for i, j in itertools.product(range(n), repeat=2):
            self.assertEqual(rel[i, j], rel[j, i])
        for i, j, k in itertools.product(range(n), repeat=3):
            if rel[i, j] and rel[j, k]:
                self.assertTrue(rel[i, k])
        # C3xC4 and C12 are the only isomorphic pair in the corpus
        self.assertEqual(sum(rel.values()), n + 2)

    def test_bound(self):
        set_max_order(4)
        with self.assertRaises(OrderTooLargeError):
            is_isomorphic(cyclic(8), cyclic(8))
        set_max_order(None)
        with mock.patch.dict(os.environ, {"XSQUARE_MAX_ORDER": "5"}):
            self.assertEqual(max_order(), 5)
        with mock.patch.dict(os.environ, {}, clear=True):
            self.assertEqual(max_order(), 64)

    def test_describe(self):
        self.assertEqual(describe_group(trivial()), "1")
        self.assertEqual(describe_group(klein4()), "C2×C2")
        self.assertEqual(describe_group(cyclic(12)), "C12")
        self.assertEqual(describe_group(symmetric(3)), "order 6, nonabelian, element orders {1:1, 2:3, 3:2}")


if __name__ == "__main__":
    unittest.main()
