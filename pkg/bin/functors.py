"""Conversions between the models of homotopy 3-types.

Crossed squares go to 2-crossed modules either directly through the
mapping cone or through the codiagonal of the binerve. Both routes land on
the same groups, so their results can be compared element by element.
Simplicial groups of depth 3 give crossed squares, 2-crossed modules and
quadratic modules from their Moore complex.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass

import numpy as np

from crossed import (
    CrossedSquare,
    PreCrossedModule,
    QuadraticModule,
    TwoCrossedModule,
    cat2_from_crossed_square,
    peiffer_quotient_projection,
    peiffer_subgroups,
    peiffer_table,
)
from groupcore import (
    Action,
    AlgebraError,
    Hom,
    Subgroup,
    conjugation_action,
    induced_action,
    induced_hom,
    intersect,
    kernel,
    normal_closure,
    quotient,
    semidirect,
    trivial,
    trivial_action,
    trivial_hom,
    whole,
)
from simplicial import (
    binerve,
    codiagonal,
    degenerate_subgroup,
    explicit_codiagonal,
    moore_complex,
    require_depth,
)

log = logging.getLogger(__name__)


class HypothesisG3NotDegenerateError(AlgebraError):
    """Level 3 is not generated by degenerate elements."""


class OmegaNotWellDefinedError(AlgebraError):
    """The lifting does not descend to the quadratic map on ``C x C``."""


def mapping_cone(s):
    """Return ``M x| N`` with ``N`` acting on ``M`` through ``nu``.

    ``(m, n)`` is stored at ``m + |M| n``.
    """
    act = Action(s.N, s.M, s.act_m.table[s.nu.map])
    return semidirect(act, "Mx|N")


def two_crossed_from_square(s):
    """Return the mapping cone ``L -> M x| N -> P`` of a crossed square.

    ``d2 l = (lam(l)^-1, lamp(l))``, ``d1(m, n) = mu(m) nu(n)``, ``P`` acts
    componentwise and the lifting is ``{(m, n), (c, a)} = h(m, n a n^-1)``.
    """
    L, M, N, P = s.L, s.M, s.N, s.P
    mn = mapping_cone(s)
    cone = mn.result
    m, n = mn.unpair(cone.elements)
    d2 = Hom(L, cone, mn.pair(M.inv[s.lam.map], s.lamp.map))
    d1 = Hom(cone, P, P.mul[s.mu.map[m], s.nu.map[n]])
    act_m = Action(P, cone, mn.pair(s.act_m.table[:, m], s.act_n.table[:, n]))
    lifting = s.h[m[:, None], N.conjugation_table[n[:, None], n[None, :]]]
    log.info("mapping cone 2-crossed module with |L|=%d |MxN|=%d |P|=%d", L.order, cone.order, P.order)
    return TwoCrossedModule(d2, d1, act_m, s.act_l, lifting)


def mapping_cone_peiffer_table(s):
    """Return the closed form of the Peiffer commutator of the mapping cone.

    ``<(m, n), (c, a)>`` is
    ``(^{nu(n a n^-1)} m m^-1, ^{mu m}(n a n^-1) (n a^-1 n^-1))``.
    """
    M, N = s.M, s.N
    mn = mapping_cone(s)
    m, n = mn.unpair(mn.result.elements)
    conj = N.conjugation_table[n[:, None], n[None, :]]
    first = M.mul[s.act_m.table[s.nu.map[conj], m[:, None]], M.inv[m][:, None]]
    second = N.mul[s.act_n.table[s.mu.map[m][:, None], conj], N.inv[conj]]
    return mn.pair(first, second)


def mapping_cone_peiffer_commutator(s, x, y):
    """Return the closed-form Peiffer commutator of cone elements ``x, y``.

    The value does not depend on the ``M`` coordinate of ``y``.
    """
    M, N = s.M, s.N
    mn = mapping_cone(s)
    m, n = (int(v) for v in mn.unpair(x))
    a = int(mn.unpair(y)[1])
    nan = N.conjugate(n, a)
    first = M.op(int(s.act_m.table[s.nu.map[nan], m]), M.inverse(m))
    second = N.op(int(s.act_n.table[s.mu.map[m], nan]), N.inverse(nan))
    return int(mn.pair(first, second))


@dataclass(eq=False)
class TwoCrossedIdentification:
    """How the low Moore terms of the codiagonal match the mapping cone.

    ``cone_to_ng1[x]`` is the element of ``NG_1`` matching cone element
    ``x``; ``l_to_ng2[l]`` is the element of ``NG_2`` matching ``l``;
    ``p_to_level0[p]`` is the level 0 element with coordinate ``p``.
    """

    nabla: object
    moore: object
    explicit: object
    cone: object
    cone_to_ng1: np.ndarray
    ng1_to_cone: np.ndarray
    l_to_ng2: np.ndarray
    ng2_to_l: np.ndarray
    p_to_level0: np.ndarray


def two_crossed_identification(s):
    """Build the codiagonal of the binerve of ``s`` and match its Moore terms.

    Raises
    ------
    AlgebraError
        If ``NG_1`` or ``NG_2`` does not match ``M x| N`` or ``L``.
    """
    L, M, N, P = s.L, s.M, s.N, s.P
    nab = codiagonal(binerve(cat2_from_crossed_square(s), 2), 2)
    moore = moore_complex(nab)
    ex = explicit_codiagonal(s, nab)
    mn = mapping_cone(s)

    ng1 = moore.terms[1].elements
    n1, m1, _ = ex.level1[ng1].T
    cone_idx = mn.pair(M.inv[m1], N.inv[n1])
    if ng1.size != mn.result.order or np.unique(cone_idx).size != ng1.size:
        raise AlgebraError(f"NG1 of order {ng1.size} does not match the mapping cone", (ng1.size,))
    cone_to_ng1 = np.empty(mn.result.order, dtype=np.intp)
    cone_to_ng1[cone_idx] = ng1
    ng1_to_cone = np.full(nab.levels[1].order, -1, dtype=np.intp)
    ng1_to_cone[ng1] = cone_idx

    ng2 = moore.terms[2].elements
    l_coord = ex.level2[ng2, 0]
    if ng2.size != L.order or np.unique(l_coord).size != ng2.size:
        raise AlgebraError(f"NG2 of order {ng2.size} does not match L", (ng2.size,))
    l_to_ng2 = np.empty(L.order, dtype=np.intp)
    l_to_ng2[l_coord] = ng2
    ng2_to_l = np.full(nab.levels[2].order, -1, dtype=np.intp)
    ng2_to_l[ng2] = l_coord

    p_to_level0 = np.empty(P.order, dtype=np.intp)
    p_to_level0[ex.level0] = np.arange(ex.level0.size)
    return TwoCrossedIdentification(
        nab, moore, ex, mn, cone_to_ng1, ng1_to_cone, l_to_ng2, ng2_to_l, p_to_level0
    )


def _checked(images, what):
    if np.any(images < 0):
        raise AlgebraError(f"{what} leaves the identified Moore term")
    return images


def two_crossed_from_square_via_codiagonal(s):
    """Return the 2-crossed module of ``s`` read off its codiagonal.

    ``d2`` is ``D_2`` on ``NG_2``, ``P`` acts by conjugation with degenerate
    elements and the lifting is ``{x, y} = [s_0 x, s_1 y][s_1 y, s_1 x]``.
    """
    ident = two_crossed_identification(s)
    nab = ident.nabla
    G1, G2 = nab.levels[1], nab.levels[2]
    cone = ident.cone.result
    s00 = nab.degeneracies[0][0].map
    s10, s11 = nab.degeneracies[1][0].map, nab.degeneracies[1][1].map

    d2 = Hom(s.L, cone, _checked(ident.ng1_to_cone[nab.faces[2][2].map[ident.l_to_ng2]], "D2"))
    d1 = Hom(cone, s.P, ident.explicit.level0[nab.faces[1][1].map[ident.cone_to_ng1]])

    sp = s00[ident.p_to_level0]
    conj = G1.mul[G1.mul[sp[:, None], ident.cone_to_ng1[None, :]], G1.inv[sp][:, None]]
    act_m = Action(s.P, cone, _checked(ident.ng1_to_cone[conj], "conjugation"))
    spp = s11[sp]
    conj = G2.mul[G2.mul[spp[:, None], ident.l_to_ng2[None, :]], G2.inv[spp][:, None]]
    act_l = Action(s.P, s.L, _checked(ident.ng2_to_l[conj], "conjugation"))

    x, y = ident.cone_to_ng1[:, None], ident.cone_to_ng1[None, :]
    value = G2.mul[G2.commutator_table[s10[x], s11[y]], G2.commutator_table[s11[y], s11[x]]]
    lifting = _checked(ident.ng2_to_l[value], "lifting")
    log.info("2-crossed module read off a codiagonal of orders %s", [lv.order for lv in nab.levels])
    return TwoCrossedModule(d2, d1, act_m, act_l, lifting)


def compare_two_crossed(a, b):
    """Return the names of the parts where two 2-crossed modules differ."""
    differ = []
    for name in ("L", "M", "N"):
        if not getattr(a, name).same_table(getattr(b, name)):
            differ.append(name)
    pairs = (
        ("d2", a.d2.map, b.d2.map),
        ("d1", a.d1.map, b.d1.map),
        ("act_m", a.act_m.table, b.act_m.table),
        ("act_l", a.act_l.table, b.act_l.table),
        ("lifting", a.lifting, b.lifting),
    )
    differ.extend(name for name, x, y in pairs if x.shape != y.shape or not np.array_equal(x, y))
    return differ


def two_crossed_from_crossed_module(c):
    """Return ``1 -> M -> N`` with the trivial lifting."""
    one = trivial()
    return TwoCrossedModule(
        trivial_hom(one, c.M),
        c.boundary,
        c.act,
        trivial_action(c.N, one),
        np.zeros((c.M.order, c.M.order), dtype=np.intp),
    )


def _lifting_conjugation(g, sub, gens):
    """Conjugate ``sub`` by ``gens`` in ``g``; return indices in ``sub``."""
    conj = g.mul[g.mul[gens[:, None], sub.elements[None, :]], g.inv[gens][:, None]]
    return sub.index_of(conj)


def _moore_lifting(g, x, y):
    """``[s_0 x, s_1 y][s_1 y, s_1 x]`` in ``G_2`` for ``x, y`` in ``G_1``."""
    G2 = g.levels[2]
    s0, s1 = g.degeneracies[1][0].map, g.degeneracies[1][1].map
    return G2.mul[G2.commutator_table[s0[x], s1[y]], G2.commutator_table[s1[y], s1[x]]]


def square_from_simplicial(g):
    """Return the crossed square of a simplicial group of depth at least 3.

    Corners are ``L = NG_2 / d_3 NG_3``, ``M = ker d_0``, ``N = ker d_1`` and
    ``P = G_1``; ``lam`` and ``lamp`` are induced by ``d_2`` and
    ``h(x, y) = [s_1 x, s_1 y s_0 y^-1]``.
    """
    require_depth(g, 3, "crossed square of a simplicial group")
    moore = moore_complex(g)
    G1, G2 = g.levels[1], g.levels[2]
    ng2 = moore.terms[2]
    ng2g = ng2.as_group()
    L, q = quotient(ng2g, Subgroup(ng2g, ng2.index_of(moore.boundary_image(3).elements)))
    L.name = "L"
    msub = moore.terms[1]
    nsub = kernel(g.faces[1][1])
    psub = whole(G1)
    for sub, name in ((msub, "M"), (nsub, "N"), (psub, "P")):
        sub.name = name
    M, N, P = msub.as_group(), nsub.as_group(), psub.as_group()

    d2 = g.faces[2][2].map[ng2.elements]
    lam = induced_hom(Hom(ng2g, M, msub.index_of(d2)), q)
    lamp = induced_hom(Hom(ng2g, N, nsub.index_of(d2)), q)
    mu = Hom(M, P, msub.elements)
    nu = Hom(N, P, nsub.elements)

    s1 = g.degeneracies[1][1].map
    s0 = g.degeneracies[1][0].map
    act_l = induced_action(Action(P, ng2g, _lifting_conjugation(G2, ng2, s1)), q)

    x = s1[msub.elements][:, None]
    y = nsub.elements
    z = G2.mul[s1[y], G2.inv[s0[y]]][None, :]
    h = q.map[ng2.index_of(G2.commutator_table[x, z])]
    log.info("crossed square of a simplicial group with corners %s", [c.order for c in (L, M, N, P)])
    act_m = conjugation_action(psub, msub)
    act_n = conjugation_action(psub, nsub)
    return CrossedSquare(lam, lamp, mu, nu, act_l, act_m, act_n, h)


def _moore_two_crossed(g, moore, divisor):
    """Return ``NG_2 / divisor -> NG_1 -> NG_0`` with the Moore lifting."""
    G1, G2 = g.levels[1], g.levels[2]
    ng0, ng1, ng2 = moore.terms[:3]
    ng2g = ng2.as_group()
    C2, q = quotient(ng2g, Subgroup(ng2g, ng2.index_of(divisor.elements)))
    C1, C0 = ng1.as_group(), ng0.as_group()
    d2 = induced_hom(Hom(ng2g, C1, ng1.index_of(g.faces[2][2].map[ng2.elements])), q)
    d1 = Hom(C1, C0, ng0.index_of(g.faces[1][1].map[ng1.elements]))

    sp = g.degeneracies[0][0].map[ng0.elements]
    act_m = Action(C0, C1, _lifting_conjugation(G1, ng1, sp))
    spp = g.degeneracies[1][1].map[sp]
    act_l = induced_action(Action(C0, ng2g, _lifting_conjugation(G2, ng2, spp)), q)

    x, y = ng1.elements[:, None], ng1.elements[None, :]
    lifting = q.map[ng2.index_of(_moore_lifting(g, x, y))]
    return TwoCrossedModule(d2, d1, act_m, act_l, lifting)


def two_crossed_from_simplicial(g):
    """Return ``NG_2 / d_3(NG_3 ∩ D_3) -> NG_1 -> NG_0``.

    ``g`` must reach level 3.
    """
    require_depth(g, 3, "2-crossed module of a simplicial group")
    moore = moore_complex(g)
    nd = intersect(moore.terms[3], degenerate_subgroup(g, 3))
    divisor = Subgroup(g.levels[2], np.unique(g.faces[3][3].map[nd.elements]))
    return _moore_two_crossed(g, moore, divisor)


def _lifting_p3(t):
    """Return ``P3'``, generated by ``{<x, y>, z}`` and ``{x, <y, z>}``."""
    w = peiffer_table(PreCrossedModule(t.d1, t.act_m))
    values = np.unique(w)
    lift = t.lifting
    gens = np.union1d(np.unique(lift[values, :]), np.unique(lift[:, values]))
    return normal_closure(t.L, gens)


def quadratic_from_two_crossed(t):
    """Return the quadratic module ``L / P3' -> M / P3 -> N`` of ``t``.

    Raises
    ------
    OmegaNotWellDefinedError
        If the lifting does not factor through ``C x C``.
    """
    pre = PreCrossedModule(t.d1, t.act_m)
    _, p3 = peiffer_subgroups(pre)
    Mq, q1 = quotient(t.M, p3)
    Lq, q2 = quotient(t.L, _lifting_p3(t))
    delta = induced_hom(t.d2, q2, q1)
    boundary = induced_hom(t.d1, q1)
    act_m = induced_action(t.act_m, q1)
    act_l = induced_action(t.act_l, q2)
    cproj = peiffer_quotient_projection(PreCrossedModule(boundary, act_m))

    c = cproj.map[q1.map]
    values = q2.map[t.lifting]
    omega = np.zeros((cproj.cod.order, cproj.cod.order), dtype=np.intp)
    omega[c[:, None], c[None, :]] = values
    bad = np.argwhere(omega[c[:, None], c[None, :]] != values)
    if bad.size:
        x, y = bad[0]
        raise OmegaNotWellDefinedError(f"lifting of ({x}, {y}) is not determined by its classes in C", (x, y))
    log.info("quadratic module with |L|=%d |M|=%d |C|=%d", Lq.order, Mq.order, cproj.cod.order)
    return QuadraticModule(delta, boundary, act_m, act_l, cproj, omega, quotient_maps=(q1, q2))


def quadratic_from_simplicial(g):
    """Return the quadratic module of a simplicial group with ``G_3 = D_3``.

    Raises
    ------
    HypothesisG3NotDegenerateError
        With a nondegenerate element of ``G_3`` as witness.
    """
    require_depth(g, 3, "quadratic module of a simplicial group")
    d3 = degenerate_subgroup(g, 3)
    if d3.order != g.levels[3].order:
        x = int(np.flatnonzero(~d3.mask)[0])
        raise HypothesisG3NotDegenerateError(f"element {x} of G3 is not generated by degeneracies", (x,))
    moore = moore_complex(g)
    return quadratic_from_two_crossed(_moore_two_crossed(g, moore, moore.boundary_image(3)))


def square_p3_closed_form(s):
    """Return the normal closure in ``L`` of the closed-form generators.

    They are ``h(^{nu(n a n^-1)} m m^-1, ^{nu z} n')`` with
    ``z = ^{mu m}(n a n^-1)(n a^-1 n^-1)``, and
    ``h(m, ^{nu n}(^{mu c}(a n' a^-1)(a n'^-1 a^-1)))``.
    """
    M, N = s.M, s.N
    h, tm, tn = s.h, s.act_m.table, s.act_n.table
    mu, nu = s.mu.map, s.nu.map
    conj = N.conjugation_table

    m = M.elements[:, None, None]
    n = N.elements[None, :, None]
    a = N.elements[None, None, :]
    nan = conj[n, a]
    x = M.mul[tm[nu[nan], m], M.inv[m]]
    z = N.mul[tn[mu[m], nan], N.inv[nan]]
    y = tn[nu[z][..., None], N.elements]
    first = h[np.broadcast_to(x[..., None], y.shape), y]

    c = M.elements[:, None, None]
    a = N.elements[None, :, None]
    n2 = N.elements[None, None, :]
    inner = N.mul[tn[mu[c], conj[a, n2]], conj[a, N.inv[n2]]]
    y = tn[nu[:, None, None, None], inner[None]]
    second = h[M.elements[:, None, None, None, None], y[None]]
    gens = np.union1d(np.unique(first), np.unique(second))
    return normal_closure(s.L, gens)


def quadratic_from_square(s):
    """Return the quadratic module of a crossed square via its mapping cone.

    The composite ``P3'`` is authoritative; a disagreement with the closed
    form generators is reported as a `UserWarning`.
    """
    t = two_crossed_from_square(s)
    closed = square_p3_closed_form(s)
    if not closed.same_elements(_lifting_p3(t)):
        warnings.warn(UserWarning("closed-form P3' generators do not match the mapping cone P3'"))
    return quadratic_from_two_crossed(t)
