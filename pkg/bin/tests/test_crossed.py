import dataclasses
import unittest

import numpy as np
from corpus import CROSSED_MODULES, SQUARES, commutator_square, load_demo, tamper_h
from crossed import (
    MAX_WITNESSES,
    Cat1Group,
    Cat2Group,
    NotCat1Error,
    PreCrossedModule,
    Report,
    cat1_from_crossed_module,
    cat2_from_crossed_square,
    check_cat1,
    check_cat2,
    check_crossed_module,
    check_crossed_square,
    crossed_module_from_cat1,
    crossed_square_from_cat2,
    peiffer_commutator,
    peiffer_subgroups,
    peiffer_table,
)
from groupcore import identity_hom, symmetric, trivial, trivial_action, trivial_hom, whole


class TestReport(unittest.TestCase):
    """Test violation reports."""

    def test_format(self):
        report = Report()
        self.assertTrue(report.ok)
        self.assertEqual(report.format(), "all axioms hold")
        report.add("x", (1, 2))
        report.add("x", (3, 4))
        self.assertFalse(report.ok)
        self.assertEqual(report.format(), "axiom x fails: 2 violation(s), first at (1, 2)")
        self.assertIn("(3, 4)", report.format(verbose=True))

    def test_truncation(self):
        report = Report()
        bad = np.ones((5, 5), dtype=bool)
        report.add_where("y", bad)
        self.assertEqual(len(report), MAX_WITNESSES)
        self.assertEqual(report.dropped["y"], 25 - MAX_WITNESSES)
        self.assertIn("25 violation(s)", report.format())

    def test_merge(self):
        inner = Report()
        inner.add("a", (0,))
        outer = Report().merge(inner, "1: ")
        self.assertEqual(outer.axioms(), ["1: a"])


class TestCrossedModules(unittest.TestCase):
    """Test crossed modules and cat1-groups."""

    def test_corpus_passes(self):
        for name in CROSSED_MODULES:
            with self.subTest(name=name):
                c = load_demo(name)
                self.assertTrue(check_crossed_module(c).ok)
                p2, p3 = peiffer_subgroups(c)
                self.assertEqual(p2.order, 1)
                self.assertEqual(p3.order, 1)
                self.assertFalse(peiffer_table(c).any())

    def test_peiffer_commutator(self):
        for name in CROSSED_MODULES:
            c = load_demo(name)
            pairs = [(x, y) for x in range(c.M.order) for y in range(c.M.order)]
            self.assertTrue(all(peiffer_commutator(c, x, y) == 0 for x, y in pairs))
        s3, one = symmetric(3), trivial()
        p = PreCrossedModule(trivial_hom(s3, one), trivial_action(one, s3))
        x, y = next((a, b) for a in range(6) for b in range(6) if s3.commutator(a, b) != 0)
        self.assertEqual(peiffer_commutator(p, x, y), s3.commutator(y, x))
        self.assertNotEqual(peiffer_commutator(p, x, y), 0)
        self.assertEqual(peiffer_commutator(p, 0, y), 0)
        self.assertEqual(peiffer_commutator(p, x, y), peiffer_table(p)[x, y])
        p2, _ = peiffer_subgroups(p)
        self.assertEqual(p2.order, 3)

    def test_tampered_action(self):
        c = load_demo("xmod-a3-s3")
        broken = dataclasses.replace(c, act=trivial_action(c.N, c.M))
        report = check_crossed_module(broken)
        self.assertIn("equivariance", report.axioms())

    def test_cat1_round_trip(self):
        for name in CROSSED_MODULES:
            with self.subTest(name=name):
                c = load_demo(name)
                k = cat1_from_crossed_module(c)
                self.assertEqual(k.group.order, c.M.order * c.N.order)
                self.assertTrue(check_cat1(k).ok)
                back = crossed_module_from_cat1(k)
                self.assertTrue(back.M.same_table(c.M))
                self.assertTrue(back.N.same_table(c.N))
                np.testing.assert_array_equal(back.boundary.map, c.boundary.map)
                np.testing.assert_array_equal(back.act.table, c.act.table)

    def test_not_cat1(self):
        k = cat1_from_crossed_module(load_demo("xmod-a3-s3"))
        broken = Cat1Group(k.group, identity_hom(k.group), k.t)
        self.assertIn("ts = s", check_cat1(broken).axioms())
        with self.assertRaises(NotCat1Error):
            crossed_module_from_cat1(broken)


class TestCrossedSquares(unittest.TestCase):
    """Test crossed squares and cat2-groups."""

    def test_corpus_passes(self):
        for name in SQUARES:
            with self.subTest(name=name):
                report = check_crossed_square(load_demo(name))
                self.assertTrue(report.ok, report.format())

    def test_commutator_square_s3(self):
        s3 = symmetric(3)
        s = commutator_square(s3, whole(s3), whole(s3))
        self.assertTrue(check_crossed_square(s).ok)
        self.assertEqual([g.order for g in (s.L, s.M, s.N, s.P)], [6, 6, 6, 6])

    def test_demo_orders(self):
        s = load_demo("square-a3-s3")
        self.assertEqual([g.order for g in (s.L, s.M, s.N, s.P)], [3, 3, 3, 6])
        s = load_demo("trivial-c2")
        self.assertEqual([g.order for g in (s.L, s.M, s.N, s.P)], [1, 1, 1, 2])

    def test_tampered_h(self):
        s3 = symmetric(3)
        s = commutator_square(s3, whole(s3), whole(s3))
        m, n = (int(v) for v in np.argwhere(s.h != 0)[0])
        report = check_crossed_square(tamper_h(s, m, n))
        self.assertFalse(report.ok)
        self.assertIn((m, n), report.by_axiom()["(iv)"])
        demo = check_crossed_square(load_demo("square-s3-tampered"))
        self.assertIn("(iv)", demo.axioms())

    def test_cat2_round_trip(self):
        orders = {"trivial-c2": 2, "square-a3-s3": 162, "square-c4-c2": 8, "square-klein-diagonal": 32}
        for name in SQUARES:
            with self.subTest(name=name):
                s = load_demo(name)
                k = cat2_from_crossed_square(s)
                self.assertEqual(k.group.order, orders[name])
                self.assertTrue(check_cat2(k).ok)
                back = crossed_square_from_cat2(k)
                for corner in "LMNP":
                    self.assertTrue(getattr(back, corner).same_table(getattr(s, corner)), corner)
                np.testing.assert_array_equal(back.h, s.h)
                for field in ("lam", "lamp", "mu", "nu"):
                    np.testing.assert_array_equal(getattr(back, field).map, getattr(s, field).map)
                self.assertTrue(check_crossed_square(back).ok)

    def test_cat2_tampered(self):
        k = cat2_from_crossed_square(load_demo("square-a3-s3"))
        broken = Cat2Group(k.group, k.s1, k.t1, identity_hom(k.group), k.t2)
        report = check_cat2(broken)
        self.assertIn("2: ts = s", report.axioms())


if __name__ == "__main__":
    unittest.main()
