"""Built-in example structures.

Each demo is a small hand-checked model. The CLI writes them out with
``xsquare.py demo NAME --out PATH`` and the test suite loops over them.
"""

from __future__ import annotations

import dataclasses
import logging

import numpy as np

from crossed import CrossedModule, CrossedSquare
from groupcore import (
    AlgebraError,
    Hom,
    Subgroup,
    TupleGroup,
    alternating,
    commutator_subgroup,
    cyclic,
    dihedral,
    direct_product,
    intersect,
    klein4,
    make_action,
    make_hom,
    quaternion8,
    symmetric,
    trivial,
    trivial_action,
    trivial_hom,
    whole,
)
from simplicial import TruncatedSimplicialGroup, nerve_cat1

log = logging.getLogger(__name__)


class UnknownDemoError(KeyError):
    """Raised for a demo name that is not in `DEMOS`."""

    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown demo {name!r}; available: {', '.join(DEMOS)}")

    def __str__(self):
        return self.args[0]


def _conjugation(parent, sub):
    """Return the action of ``parent`` on ``sub.as_group()`` by conjugation."""
    table = sub.index_of(parent.conjugation_table[:, sub.elements])
    return make_action(parent, sub.as_group(), table)


def commutator_square(p, m, n):
    """Return the crossed square of two normal subgroups of ``p``.

    ``L = M ∩ N``, every map is an inclusion, ``P`` acts by conjugation and
    ``h(m, n) = [m, n]``.
    """
    m = Subgroup(p, m.elements, "M")
    n = Subgroup(p, n.elements, "N")
    for sub in (m, n):
        witness = sub.normality_witness()
        if witness is not None:
            raise AlgebraError(f"{sub.name} is not normal", witness)
    l_sub = intersect(m, n)
    l_sub.name = "L"
    L, M, N = l_sub.as_group(), m.as_group(), n.as_group()
    h = l_sub.index_of(p.commutator_table[np.ix_(m.elements, n.elements)])
    return CrossedSquare(
        Hom(L, M, m.index_of(l_sub.elements), "lam"),
        Hom(L, N, n.index_of(l_sub.elements), "lamp"),
        m.inclusion(),
        n.inclusion(),
        _conjugation(p, l_sub),
        _conjugation(p, m),
        _conjugation(p, n),
        h,
    )


def tamper_h(s, m, n, value=0):
    """Return a copy of ``s`` with ``h(m, n)`` replaced by ``value``."""
    h = s.h.copy()
    h[m, n] = value
    return dataclasses.replace(s, h=h)


def tamper_lifting(t, x, y, value=0):
    """Return a copy of ``t`` with ``{x, y}`` replaced by ``value``."""
    lifting = t.lifting.copy()
    lifting[x, y] = value
    return dataclasses.replace(t, lifting=lifting)


def _named(group, name):
    group.name = name
    return group


def _trivial_square(L, M, N, P, mu, nu):
    """Return a square with trivial actions, ``lam``, ``lamp`` and ``h``."""
    return CrossedSquare(
        trivial_hom(L, M),
        trivial_hom(L, N),
        mu,
        nu,
        trivial_action(P, L),
        trivial_action(P, M),
        trivial_action(P, N),
        np.zeros((M.order, N.order), dtype=np.intp),
    )


def square_trivial_c2():
    """Crossed square with ``L = M = N = 1`` over ``P = C2``."""
    L, M, N = (_named(trivial(), x) for x in "LMN")
    P = _named(cyclic(2), "P")
    return _trivial_square(L, M, N, P, trivial_hom(M, P), trivial_hom(N, P))


def square_a3_s3():
    """Commutator square of ``A3`` against itself inside ``S3``."""
    p = _named(symmetric(3), "P")
    a3 = commutator_subgroup(p)
    return commutator_square(p, a3, a3)


def square_c4_c2():
    """``C4`` onto ``C2`` with trivial ``L`` and ``N``."""
    L, N = _named(trivial(), "L"), _named(trivial(), "N")
    M, P = _named(cyclic(4), "M"), _named(cyclic(2), "P")
    return _trivial_square(L, M, N, P, make_hom(M, P, [0, 1, 0, 1], "mu"), trivial_hom(N, P))


def square_klein_diagonal():
    """``C2`` corners mapped onto the diagonal of the Klein group."""
    L, M, N = (_named(cyclic(2), x) for x in "LMN")
    P = _named(klein4(), "P")
    # (1, 1) sits at index 1 + 2 * 1 in klein4
    return _trivial_square(L, M, N, P, make_hom(M, P, [0, 3], "mu"), make_hom(N, P, [0, 3], "nu"))


def square_s3_tampered():
    """Commutator square of ``S3`` with one h entry set to the identity."""
    p = _named(symmetric(3), "P")
    s = commutator_square(p, whole(p), whole(p))
    m, n = np.argwhere(s.h != 0)[0]
    return tamper_h(s, m, n)


def xmod_a3_s3():
    """``A3`` into ``S3`` with conjugation."""
    p = _named(symmetric(3), "N")
    a3 = commutator_subgroup(p)
    a3.name = "M"
    return CrossedModule(a3.inclusion(), _conjugation(p, a3))


def xmod_c4_c2():
    """``C4`` onto ``C2`` with the trivial action."""
    M, N = _named(cyclic(4), "M"), _named(cyclic(2), "N")
    return CrossedModule(make_hom(M, N, [0, 1, 0, 1], "boundary"), trivial_action(N, M))


def eilenberg_maclane_c2():
    """Return a depth-3 simplicial group with one copy of ``C2`` at level 2.

    ``G_3`` holds the tuples of ``C2^4`` with even sum, ``d_i(c) = c_i`` and
    ``s_j`` puts its argument at positions ``j`` and ``j + 1``.
    """
    one0, one1 = _named(trivial(), "G0"), _named(trivial(), "G1")
    c2 = _named(cyclic(2), "G2")
    codes = np.arange(16)
    bits = (codes[:, None] >> np.arange(3, -1, -1)) & 1
    g3 = TupleGroup([c2] * 4, bits[bits.sum(axis=1) % 2 == 0], "G3")
    G3 = g3.group
    levels = [one0, one1, c2, G3]
    faces = [
        [],
        [trivial_hom(one1, one0)] * 2,
        [trivial_hom(c2, one1)] * 3,
        [Hom(G3, c2, g3.coords[:, i]) for i in range(4)],
    ]
    degens = [[trivial_hom(one0, one1)], [trivial_hom(one1, c2)] * 2]
    row = []
    for j in range(3):
        rows = np.zeros((2, 4), dtype=np.intp)
        rows[:, j] = rows[:, j + 1] = c2.elements
        row.append(Hom(c2, G3, g3.index_of(rows)))
    degens.append(row)
    return TruncatedSimplicialGroup(levels, faces, degens, "K(C2)")


DEMOS = {
    "trivial-c2": ("crossed square 1, 1, 1 over C2", square_trivial_c2),
    "square-a3-s3": ("commutator square of A3 in S3", square_a3_s3),
    "square-c4-c2": ("crossed square with C4 onto C2 and trivial corners", square_c4_c2),
    "square-klein-diagonal": ("C2 squares onto the diagonal of the Klein group", square_klein_diagonal),
    "square-s3-tampered": ("commutator square of S3 with one h entry set to 1", square_s3_tampered),
    "xmod-a3-s3": ("crossed module A3 into S3", xmod_a3_s3),
    "xmod-c4-c2": ("crossed module C4 onto C2", xmod_c4_c2),
    "nerve-a3-s3-depth3": ("nerve of A3 into S3 up to level 3", lambda: nerve_cat1(xmod_a3_s3(), 3)),
    "nerve-c4-c2-depth3": ("nerve of C4 onto C2 up to level 3", lambda: nerve_cat1(xmod_c4_c2(), 3)),
    "kc2-depth3": ("simplicial group with C2 at level 2, up to level 3", eilenberg_maclane_c2),
}
"""Demo name to ``(description, builder)``."""

SQUARES = ("trivial-c2", "square-a3-s3", "square-c4-c2", "square-klein-diagonal")
CROSSED_MODULES = ("xmod-a3-s3", "xmod-c4-c2")
DEPTH3 = ("nerve-a3-s3-depth3", "nerve-c4-c2-depth3", "kc2-depth3")


def load_demo(name):
    """Build the demo structure called ``name``.

    Raises
    ------
    UnknownDemoError
        If ``name`` is not in `DEMOS`.
    """
    try:
        _, builder = DEMOS[name]
    except KeyError:
        raise UnknownDemoError(name) from None
    log.debug("building demo %s", name)
    return builder()


def group_corpus():
    """Return small groups, up to order 16, for isomorphism tests."""
    groups = [trivial(), klein4(), symmetric(3), alternating(4), quaternion8()]
    groups += [cyclic(n) for n in (2, 3, 4, 6, 8, 12)]
    groups += [dihedral(n) for n in (4, 6, 8)]
    groups.append(direct_product(cyclic(2), cyclic(4), "C2xC4"))
    groups.append(direct_product(cyclic(2), cyclic(6), "C2xC6"))
    groups.append(direct_product(cyclic(3), cyclic(4), "C3xC4"))
    return groups
