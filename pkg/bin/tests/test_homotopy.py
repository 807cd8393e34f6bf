import unittest

from corpus import CROSSED_MODULES, DEPTH3, SQUARES, load_demo
from crossed import cat2_from_crossed_square
from functors import (
    quadratic_from_simplicial,
    quadratic_from_square,
    quadratic_from_two_crossed,
    two_crossed_from_crossed_module,
    two_crossed_from_simplicial,
    two_crossed_from_square,
    two_crossed_from_square_via_codiagonal,
)
from groupcore import describe_group
from homotopy import (
    check_pi3_bijection,
    compare_simplicial_routes,
    homotopy,
    homotopy_quadratic,
    homotopy_simplicial,
    homotopy_square,
    homotopy_two_crossed,
    signatures_isomorphic,
)
from simplicial import binerve, codiagonal

EXPECTED = {
    "trivial-c2": ("C2", "1", "1"),
    "square-a3-s3": ("C2", "1", "1"),
    "square-c4-c2": ("1", "C2", "1"),
    "square-klein-diagonal": ("C2", "C2", "C2"),
    "nerve-a3-s3-depth3": ("C2", "1", "1"),
    "nerve-c4-c2-depth3": ("1", "C2", "1"),
    "kc2-depth3": ("1", "1", "C2"),
}


def names(signature):
    return tuple(describe_group(g) for g in signature.groups())


class TestSignatures(unittest.TestCase):
    """Test homotopy groups of the built-in structures."""

    def test_expected(self):
        for name, expected in EXPECTED.items():
            with self.subTest(name=name):
                signature = homotopy(load_demo(name))
                self.assertEqual(names(signature), expected)
                self.assertFalse(signature.truncated)

    def test_crossed_modules(self):
        expected = {"xmod-a3-s3": ("C2", "1", "1"), "xmod-c4-c2": ("1", "C2", "1")}
        for name in CROSSED_MODULES:
            t = two_crossed_from_crossed_module(load_demo(name))
            self.assertEqual(names(homotopy_two_crossed(t)), expected[name])

    def test_format(self):
        text = homotopy_square(load_demo("square-a3-s3")).format()
        self.assertEqual(text.splitlines()[0], "pi1 = C2  (order 2, abelian)")
        self.assertEqual(len(text.splitlines()), 3)

    def test_truncated(self):
        s = load_demo("square-c4-c2")
        nab = codiagonal(binerve(cat2_from_crossed_square(s)))
        signature = homotopy_simplicial(nab)
        self.assertTrue(signature.truncated)
        self.assertIn("truncated", signature.format())
        self.assertEqual(names(signature)[:2], ("1", "C2"))

    def test_unsupported(self):
        with self.assertRaises(TypeError):
            homotopy(load_demo("xmod-c4-c2"))

    def test_abelian(self):
        for name in EXPECTED:
            signature = homotopy(load_demo(name))
            self.assertTrue(signature.pi2.is_abelian())
            self.assertTrue(signature.pi3.is_abelian())


class TestRoutes(unittest.TestCase):
    """Test that every route to the homotopy groups agrees."""

    def test_square_routes(self):
        for name in SQUARES:
            with self.subTest(name=name):
                s = load_demo(name)
                direct = homotopy_square(s)
                for other in (
                    homotopy_two_crossed(two_crossed_from_square(s)),
                    homotopy_two_crossed(two_crossed_from_square_via_codiagonal(s)),
                    homotopy_quadratic(quadratic_from_square(s)),
                ):
                    self.assertTrue(signatures_isomorphic(direct, other))

    def test_two_crossed_vs_quadratic(self):
        inputs = [two_crossed_from_square(load_demo(name)) for name in SQUARES]
        inputs += [two_crossed_from_simplicial(load_demo(name)) for name in DEPTH3]
        for t in inputs:
            q = quadratic_from_two_crossed(t)
            self.assertTrue(signatures_isomorphic(homotopy_two_crossed(t), homotopy_quadratic(q)))
            self.assertEqual(check_pi3_bijection(t), [])

    def test_simplicial_routes(self):
        for name in DEPTH3:
            with self.subTest(name=name):
                g = load_demo(name)
                direct, via_square, agree = compare_simplicial_routes(g)
                self.assertTrue(agree)
                self.assertTrue(signatures_isomorphic(homotopy_simplicial(g), direct))
                quadratic = homotopy_quadratic(quadratic_from_simplicial(g))
                self.assertTrue(signatures_isomorphic(homotopy_simplicial(g), quadratic))


if __name__ == "__main__":
    unittest.main()
