import dataclasses
import unittest

from corpus import CROSSED_MODULES, DEPTH3, SQUARES, load_demo
from crossed import cat2_from_crossed_square
from groupcore import cyclic, symmetric
from simplicial import (
    PAIRINGS,
    DepthTooShallowError,
    ElementNotInMooreError,
    UnsupportedPairingError,
    binerve,
    check_bisimplicial,
    check_explicit_codiagonal,
    check_moore_theorem,
    check_pairing_congruences,
    check_pairing_formulas,
    check_simplicial,
    codiagonal,
    constant_simplicial,
    degenerate_subgroup,
    moore_complex,
    moore_degenerate_intersections,
    nerve_cat1,
    pairing_normal_subgroup,
    pairing_table,
    peiffer_pairing,
)


def square_codiagonal(name):
    s = load_demo(name)
    return s, codiagonal(binerve(cat2_from_crossed_square(s)))


class TestSimplicialGroups(unittest.TestCase):
    """Test nerves and the simplicial identities."""

    def test_nerve_orders(self):
        expected = {"xmod-a3-s3": [6, 18, 54, 162], "xmod-c4-c2": [2, 8, 32, 128]}
        for name in CROSSED_MODULES:
            with self.subTest(name=name):
                g = nerve_cat1(load_demo(name), 3)
                self.assertEqual([lv.order for lv in g.levels], expected[name])
                self.assertTrue(check_simplicial(g).ok)
                self.assertEqual(g.depth, 3)

    def test_depth3_corpus(self):
        for name in DEPTH3:
            with self.subTest(name=name):
                g = load_demo(name)
                self.assertTrue(check_simplicial(g).ok)
                self.assertEqual(degenerate_subgroup(g, 3).order, g.levels[3].order)
                moore = moore_complex(g)
                for n in range(2, g.depth + 1):
                    self.assertTrue(moore.boundary(n - 1).compose(moore.boundary(n)).is_trivial())

    def test_kc2_moore(self):
        moore = moore_complex(load_demo("kc2-depth3"))
        self.assertEqual([t.order for t in moore.terms], [1, 1, 2, 1])

    def test_constant(self):
        g = constant_simplicial(symmetric(3), 2)
        self.assertTrue(check_simplicial(g).ok)
        self.assertEqual([t.order for t in moore_complex(g).terms], [6, 1, 1])

    def test_tampered_face(self):
        _, nab = square_codiagonal("square-a3-s3")
        faces = [list(row) for row in nab.faces]
        faces[2][2] = faces[2][1]
        report = check_simplicial(dataclasses.replace(nab, faces=faces))
        self.assertFalse(report.ok)

    def test_shape(self):
        g = constant_simplicial(cyclic(2), 2)
        broken = dataclasses.replace(g, degeneracies=g.degeneracies[:1])
        self.assertEqual(check_simplicial(broken).axioms(), ["shape"])


class TestCodiagonal(unittest.TestCase):
    """Test the binerve and codiagonal of crossed squares."""

    def test_orders(self):
        _, nab = square_codiagonal("square-a3-s3")
        self.assertEqual([lv.order for lv in nab.levels], [6, 54, 1458])
        _, nab = square_codiagonal("square-klein-diagonal")
        self.assertEqual([lv.order for lv in nab.levels], [4, 16, 128])

    def test_corpus(self):
        for name in SQUARES:
            with self.subTest(name=name):
                s = load_demo(name)
                b = binerve(cat2_from_crossed_square(s))
                self.assertTrue(check_bisimplicial(b).ok)
                nab = codiagonal(b)
                self.assertTrue(check_simplicial(nab).ok)
                report = check_explicit_codiagonal(s, nab)
                self.assertTrue(report.ok, report.format())

    def test_too_shallow(self):
        k = cat2_from_crossed_square(load_demo("trivial-c2"))
        with self.assertRaises(DepthTooShallowError):
            codiagonal(binerve(k, 1), 2)
        _, nab = square_codiagonal("trivial-c2")
        with self.assertRaises(DepthTooShallowError):
            check_pairing_congruences(nab)


class TestPairings(unittest.TestCase):
    """Test Peiffer pairings of simplicial groups."""

    def inputs(self):
        groups = [load_demo(name) for name in DEPTH3]
        groups += [square_codiagonal(name)[1] for name in ("square-a3-s3", "square-klein-diagonal")]
        return groups

    def test_formulas(self):
        for g in self.inputs():
            with self.subTest(name=g.name):
                report = check_pairing_formulas(g)
                self.assertTrue(report.ok, report.format())

    def test_boundaries(self):
        for name in DEPTH3:
            with self.subTest(name=name):
                report = check_pairing_congruences(load_demo(name))
                self.assertTrue(report.ok, report.format())

    def test_values_in_moore(self):
        for name in DEPTH3:
            g = load_demo(name)
            moore = moore_complex(g)
            for n, indices in PAIRINGS.items():
                for index in indices:
                    values = pairing_table(g, index, moore)[2]
                    self.assertTrue(moore.terms[n].mask[values].all(), index.label())

    def test_intersections(self):
        for g in self.inputs():
            with self.subTest(name=g.name):
                left, right = moore_degenerate_intersections(g, 2)
                self.assertTrue(left.same_elements(right))
                self.assertTrue(pairing_normal_subgroup(g, 2).is_normal())

    def test_moore_theorem(self):
        for g in self.inputs():
            with self.subTest(name=g.name):
                report = check_moore_theorem(g, 2)
                self.assertTrue(report.ok, report.format())
        for name in DEPTH3:
            with self.subTest(name=name):
                report = check_moore_theorem(load_demo(name), 3)
                self.assertTrue(report.ok, report.format())

    def test_errors(self):
        g = load_demo("nerve-a3-s3-depth3")
        with self.assertRaises(UnsupportedPairingError):
            peiffer_pairing(g, (2, (0,), (1,)), 0, 0)
        moore = moore_complex(g)
        outside = int(next(x for x in g.levels[1].elements if x not in moore.terms[1]))
        with self.assertRaises(ElementNotInMooreError):
            peiffer_pairing(g, (2, (1,), (0,)), outside, 0)
        self.assertEqual(peiffer_pairing(g, (2, (1,), (0,)), 0, 0), 0)


if __name__ == "__main__":
    unittest.main()
