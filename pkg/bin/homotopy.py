"""Homotopy groups of every model, and comparisons between routes."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from crossed import CrossedSquare, QuadraticModule, TwoCrossedModule
from functors import (
    quadratic_from_two_crossed,
    square_from_simplicial,
    two_crossed_from_simplicial,
    two_crossed_from_square,
)
from groupcore import (
    AlgebraError,
    Subgroup,
    describe_group,
    image,
    intersect,
    is_isomorphic,
    kernel,
    quotient,
    trivial,
    whole,
)
from simplicial import TruncatedSimplicialGroup, moore_complex

log = logging.getLogger(__name__)


class NotNormalImageError(AlgebraError):
    """The image of a boundary is not normal, so no quotient exists."""


@dataclass(eq=False)
class HomotopySignature:
    """The groups ``pi_1``, ``pi_2`` and ``pi_3``.

    ``truncated`` is set when the model stopped below the level needed to
    divide out boundaries for ``pi_3``.
    """

    pi1: object
    pi2: object
    pi3: object
    truncated: bool = False

    def groups(self):
        return self.pi1, self.pi2, self.pi3

    def format(self):
        lines = []
        for n, g in enumerate(self.groups(), 1):
            kind = "abelian" if g.is_abelian() else "nonabelian"
            lines.append(f"pi{n} = {describe_group(g)}  (order {g.order}, {kind})")
        if self.truncated:
            lines.append("pi3 is computed without dividing by boundaries (truncated input)")
        return "\n".join(lines)


def _homology(cycles, boundaries, what):
    """Return ``cycles / boundaries`` for subgroups of one group.

    Raises
    ------
    NotNormalImageError
        If ``boundaries`` is not normal in ``cycles``.
    """
    z = cycles.as_group()
    b = Subgroup(z, cycles.index_of(boundaries.elements))
    witness = b.normality_witness()
    if witness is not None:
        raise NotNormalImageError(f"boundary image is not normal in {what}", witness)
    return quotient(z, b)[0]


def homotopy_simplicial(g):
    """Return ``pi_n = (ker d_{n-1} ∩ NG_{n-1}) / d_n NG_n`` for n <= 3.

    Below depth 3 the missing boundary groups are taken as trivial and the
    signature is marked truncated.
    """
    moore = moore_complex(g)
    k = g.depth
    groups = []
    for n in (1, 2, 3):
        level = n - 1
        if level > k:
            groups.append(trivial())
            continue
        cycles = moore.terms[level]
        if level >= 1:
            cycles = intersect(cycles, kernel(g.faces[level][level]))
        if n <= k:
            boundaries = moore.boundary_image(n)
        else:
            boundaries = Subgroup(g.levels[level], [0])
        groups.append(_homology(cycles, boundaries, f"level {level}"))
    signature = HomotopySignature(*groups, truncated=k < 3)
    log.info("simplicial homotopy orders %s", [x.order for x in groups])
    return signature


def homotopy_two_crossed(t):
    """Return ``(N / im d1, ker d1 / im d2, ker d2)``."""
    pi1 = _homology(whole(t.N), image(t.d1), "N")
    pi2 = _homology(kernel(t.d1), image(t.d2), "ker d1")
    pi3 = kernel(t.d2).as_group()
    return HomotopySignature(pi1, pi2, pi3)


def homotopy_quadratic(q):
    """Return ``(N / im boundary, ker boundary / im delta, ker delta)``."""
    pi1 = _homology(whole(q.N), image(q.boundary), "N")
    pi2 = _homology(kernel(q.boundary), image(q.delta), "ker boundary")
    pi3 = kernel(q.delta).as_group()
    return HomotopySignature(pi1, pi2, pi3)


def homotopy_square(s):
    """Return the homotopy groups of a crossed square via its mapping cone."""
    return homotopy_two_crossed(two_crossed_from_square(s))


def homotopy(x):
    """Dispatch on the model type of ``x``."""
    if isinstance(x, CrossedSquare):
        return homotopy_square(x)
    if isinstance(x, TwoCrossedModule):
        return homotopy_two_crossed(x)
    if isinstance(x, QuadraticModule):
        return homotopy_quadratic(x)
    if isinstance(x, TruncatedSimplicialGroup):
        return homotopy_simplicial(x)
    raise TypeError(f"no homotopy groups for {type(x).__name__}")


def signatures_isomorphic(a, b, max_order=None):
    """Return whether two signatures agree group by group up to isomorphism."""
    return all(is_isomorphic(x, y, max_order) for x, y in zip(a.groups(), b.groups()))


def check_pi3_bijection(t):
    """Check that ``L -> L / P3'`` maps ``ker d2`` isomorphically onto
    ``ker delta``.

    Returns
    -------
    problems : `list` of `str`
        Empty when the restriction is a bijection.
    """
    q = quadratic_from_two_crossed(t)
    q2 = q.quotient_maps[1]
    source = kernel(t.d2)
    target = kernel(q.delta)
    images = q2.map[source.elements]
    problems = []
    if not target.mask[images].all():
        problems.append("ker d2 is not mapped into ker delta")
    if np.unique(images).size != source.order:
        problems.append("restriction to ker d2 is not injective")
    if source.order != target.order:
        problems.append(f"|ker d2| = {source.order} but |ker delta| = {target.order}")
    return problems


def compare_simplicial_routes(g, max_order=None):
    """Compare the 2-crossed module of ``g`` with the one via its square.

    Returns
    -------
    direct, via_square : `HomotopySignature`
        Signatures of the two routes.
    agree : `bool`
        Whether they match up to isomorphism.
    """
    direct = homotopy_two_crossed(two_crossed_from_simplicial(g))
    via_square = homotopy_square(square_from_simplicial(g))
    return direct, via_square, signatures_isomorphic(direct, via_square, max_order)
