import dataclasses
import unittest
import warnings

import numpy as np
from corpus import CROSSED_MODULES, DEPTH3, SQUARES, commutator_square, load_demo, tamper_lifting
from crossed import (
    PreCrossedModule,
    check_crossed_module,
    check_crossed_square,
    check_quadratic,
    check_two_crossed,
    derived_crossed_module,
    peiffer_table,
)
from functors import (
    HypothesisG3NotDegenerateError,
    compare_two_crossed,
    mapping_cone,
    mapping_cone_peiffer_commutator,
    mapping_cone_peiffer_table,
    quadratic_from_simplicial,
    quadratic_from_square,
    quadratic_from_two_crossed,
    square_from_simplicial,
    two_crossed_from_crossed_module,
    two_crossed_from_simplicial,
    two_crossed_from_square,
    two_crossed_from_square_via_codiagonal,
)
from groupcore import Hom, TupleGroup, symmetric, whole
from simplicial import DepthTooShallowError, check_simplicial, constant_simplicial


def nondegenerate_top():
    """Return the C2 simplicial group with all of ``C2^4`` at level 3."""
    g = load_demo("kc2-depth3")
    c2 = g.levels[2]
    rows = (np.arange(16)[:, None] >> np.arange(3, -1, -1)) & 1
    top = TupleGroup([c2] * 4, rows, "G3")
    faces = g.faces[:3] + [[Hom(top.group, c2, top.coords[:, i]) for i in range(4)]]
    row = []
    for j in range(3):
        images = np.zeros((2, 4), dtype=np.intp)
        images[:, j] = images[:, j + 1] = c2.elements
        row.append(Hom(c2, top.group, top.index_of(images)))
    levels = g.levels[:3] + [top.group]
    return dataclasses.replace(g, levels=levels, faces=faces, degeneracies=g.degeneracies[:2] + [row])


class TestMappingCone(unittest.TestCase):
    """Test the 2-crossed module of a crossed square."""

    def squares(self):
        s3 = symmetric(3)
        return [load_demo(name) for name in SQUARES] + [commutator_square(s3, whole(s3), whole(s3))]

    def test_passes(self):
        for s in self.squares():
            with self.subTest(orders=[g.order for g in (s.L, s.M, s.N, s.P)]):
                t = two_crossed_from_square(s)
                report = check_two_crossed(t)
                self.assertTrue(report.ok, report.format())
                mn = mapping_cone(s)
                np.testing.assert_array_equal(t.d2.map, mn.pair(s.M.inv[s.lam.map], s.lamp.map))
                self.assertTrue(check_crossed_module(derived_crossed_module(t)).ok)

    def test_peiffer_closed_form(self):
        for s in self.squares():
            t = two_crossed_from_square(s)
            generic = peiffer_table(PreCrossedModule(t.d1, t.act_m))
            np.testing.assert_array_equal(mapping_cone_peiffer_table(s), generic)

    def test_peiffer_commutator_pointwise(self):
        s = load_demo("square-a3-s3")
        t = two_crossed_from_square(s)
        generic = peiffer_table(PreCrossedModule(t.d1, t.act_m))
        mn = mapping_cone(s)
        for x in range(mn.result.order):
            self.assertEqual(mapping_cone_peiffer_commutator(s, x, 0), 0)
            self.assertEqual(mapping_cone_peiffer_commutator(s, 0, x), 0)
            for y in range(mn.result.order):
                self.assertEqual(mapping_cone_peiffer_commutator(s, x, y), generic[x, y])

    def test_peiffer_ignores_m_coordinate(self):
        for s in self.squares():
            mn = mapping_cone(s)
            with self.subTest(orders=[g.order for g in (s.L, s.M, s.N, s.P)]):
                for x in range(mn.result.order):
                    for a in range(s.N.order):
                        ys = mn.pair(s.M.elements, a)
                        values = {mapping_cone_peiffer_commutator(s, x, int(y)) for y in ys}
                        self.assertEqual(len(values), 1)

    def test_tampered_lifting(self):
        t = two_crossed_from_square(load_demo("square-a3-s3"))
        tampered = tamper_lifting(t, 1, 1, 1)
        report = check_two_crossed(tampered)
        self.assertIn((1, 1), report.by_axiom()["2CM1"])
        self.assertEqual(compare_two_crossed(t, tampered), ["lifting"])

    def test_codiagonal_route(self):
        for name in SQUARES:
            with self.subTest(name=name):
                s = load_demo(name)
                via = two_crossed_from_square_via_codiagonal(s)
                self.assertTrue(check_two_crossed(via).ok)
                self.assertEqual(compare_two_crossed(two_crossed_from_square(s), via), [])

    def test_crossed_module(self):
        for name in CROSSED_MODULES:
            t = two_crossed_from_crossed_module(load_demo(name))
            self.assertEqual(t.L.order, 1)
            self.assertTrue(check_two_crossed(t).ok)


class TestQuadratic(unittest.TestCase):
    """Test quadratic modules built from 2-crossed modules and squares."""

    def test_from_two_crossed(self):
        inputs = [two_crossed_from_square(load_demo(name)) for name in SQUARES]
        inputs += [two_crossed_from_crossed_module(load_demo(name)) for name in CROSSED_MODULES]
        for t in inputs:
            q = quadratic_from_two_crossed(t)
            report = check_quadratic(q)
            self.assertTrue(report.ok, report.format())
            q1, q2 = q.quotient_maps
            self.assertIs(q1.dom, t.M)
            self.assertIs(q2.dom, t.L)

    def test_from_square(self):
        for name in SQUARES:
            with self.subTest(name=name):
                with warnings.catch_warnings():
                    warnings.simplefilter("error")
                    q = quadratic_from_square(load_demo(name))
                self.assertTrue(check_quadratic(q).ok)

    def test_tampered_omega(self):
        q = quadratic_from_two_crossed(two_crossed_from_square(load_demo("square-a3-s3")))
        omega = q.omega.copy()
        x = int(np.flatnonzero(q.cproj.map)[0])
        c = int(q.cproj.map[x])
        omega[c, c] = 1
        report = check_quadratic(dataclasses.replace(q, omega=omega))
        self.assertFalse(report.ok)


class TestSimplicialFunctors(unittest.TestCase):
    """Test models read off depth 3 simplicial groups."""

    def test_corpus(self):
        for name in DEPTH3:
            with self.subTest(name=name):
                g = load_demo(name)
                s = square_from_simplicial(g)
                self.assertTrue(check_crossed_square(s).ok)
                t = two_crossed_from_simplicial(g)
                self.assertTrue(check_two_crossed(t).ok)
                q = quadratic_from_simplicial(g)
                self.assertTrue(check_quadratic(q).ok)

    def test_kc2(self):
        t = two_crossed_from_simplicial(load_demo("kc2-depth3"))
        self.assertEqual([t.L.order, t.M.order, t.N.order], [2, 1, 1])

    def test_nondegenerate_top(self):
        g = nondegenerate_top()
        self.assertTrue(check_simplicial(g).ok)
        with self.assertRaises(HypothesisG3NotDegenerateError):
            quadratic_from_simplicial(g)
        self.assertTrue(check_two_crossed(two_crossed_from_simplicial(g)).ok)

    def test_too_shallow(self):
        g = constant_simplicial(symmetric(3), 2)
        for build in (square_from_simplicial, two_crossed_from_simplicial, quadratic_from_simplicial):
            with self.assertRaises(DepthTooShallowError):
                build(g)


if __name__ == "__main__":
    unittest.main()
