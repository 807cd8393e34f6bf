"""Crossed modules, crossed squares, 2-crossed modules, quadratic modules
and cat-groups, with their axiom checkers.

Checkers never raise on a failed axiom. They return a `Report`, a list of
`Violation` entries, each naming the axiom and the element indices that
break it.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from groupcore import (
    Action,
    AlgebraError,
    Hom,
    abelianization,
    action_violations,
    conjugation_action,
    image,
    intersect,
    kernel,
    make_action,
    normal_closure,
    quotient,
    restrict,
    semidirect,
)

log = logging.getLogger(__name__)

MAX_WITNESSES = 20
"""Violations kept per axiom; the remainder is only counted."""


class NotCat1Error(AlgebraError):
    """A cat1 condition fails where a cat1-group is required."""


class Violation(NamedTuple):
    """One failed instance of an axiom and the element indices showing it."""

    axiom: str
    witness: tuple


class Report(list):
    """Violations found by a checker; empty means every axiom holds."""

    def __init__(self, *args):
        super().__init__(*args)
        self.dropped = defaultdict(int)

    @property
    def ok(self):
        return not self and not self.dropped

    def add(self, axiom, witness):
        if sum(1 for v in self if v.axiom == axiom) >= MAX_WITNESSES:
            self.dropped[axiom] += 1
            return
        self.append(Violation(axiom, tuple(int(w) for w in witness)))

    def add_where(self, axiom, bad, prefix=()):
        """Record one violation per ``True`` entry of the array ``bad``."""
        for pos in np.argwhere(bad)[: MAX_WITNESSES + 1]:
            self.add(axiom, tuple(prefix) + tuple(pos))
        extra = int(np.count_nonzero(bad)) - MAX_WITNESSES - 1
        if extra > 0:
            self.dropped[axiom] += extra

    def merge(self, other, prefix=""):
        for v in other:
            self.add(prefix + v.axiom, v.witness)
        for axiom, count in other.dropped.items():
            self.dropped[prefix + axiom] += count
        return self

    def by_axiom(self):
        grouped = defaultdict(list)
        for v in self:
            grouped[v.axiom].append(v.witness)
        return dict(grouped)

    def axioms(self):
        return sorted({v.axiom for v in self} | set(self.dropped))

    def format(self, verbose=False):
        if self.ok:
            return "all axioms hold"
        lines = []
        grouped = self.by_axiom()
        for axiom in self.axioms():
            witnesses = grouped.get(axiom, [])
            total = len(witnesses) + self.dropped.get(axiom, 0)
            first = witnesses[0] if witnesses else ()
            lines.append(f"axiom {axiom} fails: {total} violation(s), first at {first}")
            if verbose:
                lines.extend(f"    {w}" for w in witnesses[1:])
        return "\n".join(lines)


@dataclass(eq=False)
class PreCrossedModule:
    """A map ``boundary: M -> N`` with an action of ``N`` on ``M``."""

    boundary: Hom
    act: Action

    @property
    def M(self):
        return self.boundary.dom

    @property
    def N(self):
        return self.boundary.cod


class CrossedModule(PreCrossedModule):
    """A pre-crossed module meant to satisfy the Peiffer identity."""


def check_precrossed(p):
    """Check ``d(^n m) = n d(m) n^-1``."""
    report = Report()
    bd, N = p.boundary.map, p.N
    lhs = bd[p.act.table]
    rhs = N.conjugation_table[:, bd]
    report.add_where("equivariance", lhs != rhs)
    return report


def check_crossed_module(c):
    """Check equivariance and the Peiffer identity
    ``^{d m} m' = m m' m^-1``.
    """
    report = check_precrossed(c)
    lhs = c.act.table[c.boundary.map]
    report.add_where("peiffer", lhs != c.M.conjugation_table)
    return report


def peiffer_table(p):
    """Return ``W[x, y] = <x, y> = (^{d x} y) x y^-1 x^-1`` over ``M x M``."""
    M = p.M
    moved = p.act.table[p.boundary.map]
    return M.mul[M.mul[M.mul[moved, M.elements[:, None]], M.inv[None, :]], M.inv[:, None]]


def peiffer_commutator(p, x, y):
    """Return ``<x, y>`` for one pair of elements of ``M``."""
    M = p.M
    moved = int(p.act.table[p.boundary.map[x], y])
    return M.op(M.op(M.op(moved, x), M.inverse(y)), M.inverse(x))


def peiffer_subgroups(p):
    """Return ``(P2, P3)``, the normal subgroups generated by Peiffer
    commutators of length 2 and 3.
    """
    w = peiffer_table(p)
    values = np.unique(w)
    p2 = normal_closure(p.M, values)
    longer = np.union1d(np.unique(w[values, :]), np.unique(w[:, values]))
    p3 = normal_closure(p.M, longer)
    return p2, p3


@dataclass(eq=False)
class CrossedSquare:
    """A commutative square of crossed modules with an h-map.

    ``lam: L -> M``, ``lamp: L -> N``, ``mu: M -> P`` and ``nu: N -> P``;
    ``P`` acts on the other corners and ``h[m, n]`` lies in ``L``.
    """

    lam: Hom
    lamp: Hom
    mu: Hom
    nu: Hom
    act_l: Action
    act_m: Action
    act_n: Action
    h: np.ndarray

    L = property(lambda self: self.lam.dom)
    M = property(lambda self: self.mu.dom)
    N = property(lambda self: self.nu.dom)
    P = property(lambda self: self.mu.cod)


def check_crossed_square(s):
    """Check the axioms of a crossed square.

    Axiom ids are ``"commutes"``, ``"(i) ..."`` for the crossed module and
    equivariance conditions, and ``"(ii)"`` to ``"(viii)"`` for the h-map.
    """
    report = Report()
    L, M, N, P = s.L, s.M, s.N, s.P
    lam, lamp, mu, nu = s.lam.map, s.lamp.map, s.mu.map, s.nu.map
    h = s.h
    tl, tm, tn = s.act_l.table, s.act_m.table, s.act_n.table

    report.add_where("commutes", mu[lam] != nu[lamp])

    for label, cm in (
        ("mu", CrossedModule(s.mu, s.act_m)),
        ("nu", CrossedModule(s.nu, s.act_n)),
        ("lam", CrossedModule(s.lam, s.act_l.pullback(s.mu))),
        ("lamp", CrossedModule(s.lamp, s.act_l.pullback(s.nu))),
        ("mu lam", CrossedModule(s.mu.compose(s.lam), s.act_l)),
    ):
        report.merge(check_crossed_module(cm), f"(i) {label} ")
    report.add_where("(i) lam equivariance", lam[tl] != tm[:, lam])
    report.add_where("(i) lamp equivariance", lamp[tl] != tn[:, lamp])

    ms, ns = M.elements, N.elements
    for m in range(M.order):
        lhs = h[M.mul[m]]
        rhs = L.mul[h[tm[mu[m]][:, None], tn[mu[m]][None, :]], h[m][None, :]]
        report.add_where("(ii)", lhs != rhs, (m,))
    for n in range(N.order):
        lhs = h[:, N.mul[n]]
        rhs = L.mul[h[:, n][:, None], h[tm[nu[n]][:, None], tn[nu[n]][None, :]]]
        for m, n2 in np.argwhere(lhs != rhs)[: MAX_WITNESSES + 1]:
            report.add("(iii)", (m, n, n2))

    rhs = M.mul[ms[:, None], tm[nu[None, :], M.inv[:, None]]]
    report.add_where("(iv)", lam[h] != rhs)
    rhs = N.mul[tn[mu[:, None], ns[None, :]], N.inv[None, :]]
    report.add_where("(v)", lamp[h] != rhs)
    rhs = L.mul[L.elements[:, None], tl[nu[None, :], L.inv[:, None]]]
    report.add_where("(vi)", h[lam] != rhs)
    rhs = L.mul[tl[mu[:, None], L.elements[None, :]], L.inv[None, :]]
    report.add_where("(vii)", h[:, lamp] != rhs)
    for p in range(P.order):
        lhs = h[tm[p][:, None], tn[p][None, :]]
        report.add_where("(viii)", lhs != tl[p][h], (p,))

    log.debug("crossed square check found %d violation(s)", len(report))
    return report


@dataclass(eq=False)
class TwoCrossedModule:
    """A complex ``L -> M -> N`` with ``N`` actions and a Peiffer lifting.

    ``lifting[m, m2]`` is ``{m, m2}`` in ``L``.
    """

    d2: Hom
    d1: Hom
    act_m: Action
    act_l: Action
    lifting: np.ndarray

    L = property(lambda self: self.d2.dom)
    M = property(lambda self: self.d1.dom)
    N = property(lambda self: self.d1.cod)

    def derived_action(self):
        """Return the action of ``M`` on ``L``, ``^m l = {d2 l, m} l``."""
        L, M = self.L, self.M
        table = L.mul[self.lifting[self.d2.map[None, :], M.elements[:, None]], L.elements[None, :]]
        return Action(M, L, table)


def derived_crossed_module(t):
    """Return ``d2: L -> M`` with the derived action of ``M`` on ``L``."""
    return CrossedModule(t.d2, t.derived_action())


def check_two_crossed(t):
    """Check the axioms of a 2-crossed module.

    Axiom ids follow the usual numbering ``2CM1`` to ``2CM5``, with
    ``2CM4(a)``/``2CM4(b)`` for the two split forms and ``derived ...`` for
    the crossed module ``L -> M`` under the derived action.
    """
    report = Report()
    L, M = t.L, t.M
    d1, d2, lift = t.d1.map, t.d2.map, t.lifting
    al, am = t.act_l.table, t.act_m.table
    ms = M.elements
    conj_m = M.conjugation_table

    report.add_where("complex", d1[d2] != 0)
    report.add_where("equivariance d2", d2[al] != am[:, d2])
    report.merge(check_precrossed(PreCrossedModule(t.d1, t.act_m)), "d1 ")
    report.add_where("lifting unit", (lift[0] != 0) | (lift[:, 0] != 0))

    w = peiffer_table(PreCrossedModule(t.d1, t.act_m))
    report.add_where("2CM1", d2[lift] != w)
    report.add_where("2CM2", lift[d2[:, None], d2[None, :]] != L.commutator_table.T)

    for m in range(M.order):
        lhs = lift[M.mul[m]]
        rhs = L.mul[al[d1[m]][lift], lift[m][conj_m]]
        report.add_where("2CM3(i)", lhs != rhs, (m,))

        lhs = lift[m][M.mul]
        x = conj_m[m]
        l2 = lift[m][None, :]
        moved = L.mul[lift[d2[l2], x[:, None]], l2]
        rhs = L.mul[lift[m][:, None], moved]
        report.add_where("2CM3(ii)", lhs != rhs, (m,))

    derived = t.derived_action().table
    left = lift[ms[:, None], d2[None, :]]
    right = lift[d2[None, :], ms[:, None]]
    moved_by_n = L.mul[al[d1[:, None], L.elements[None, :]], L.inv[None, :]]
    report.add_where("2CM4", L.mul[left, right] != moved_by_n)
    report.add_where("2CM4(a)", right != L.mul[derived, L.inv[None, :]])
    report.add_where("2CM4(b)", left != L.mul[al[d1[:, None], L.elements[None, :]], L.inv[derived]])

    for n in range(t.N.order):
        lhs = al[n][lift]
        rhs = lift[am[n][:, None], am[n][None, :]]
        report.add_where("2CM5", lhs != rhs, (n,))

    for kind, witness in action_violations(M, L, derived):
        report.add(f"derived action {kind}", witness)
    report.merge(check_crossed_module(derived_crossed_module(t)), "derived ")

    log.debug("2-crossed module check found %d violation(s)", len(report))
    return report


@dataclass(eq=False)
class QuadraticModule:
    """A quadratic module ``delta: L -> M``, ``boundary: M -> N`` with
    ``omega: C x C -> L``.

    ``cproj`` is the projection ``M -> C = (M / P2)^ab``. ``quotient_maps``
    holds the projections from the 2-crossed module this was built from,
    when there is one.
    """

    delta: Hom
    boundary: Hom
    act_m: Action
    act_l: Action
    cproj: Hom
    omega: np.ndarray
    quotient_maps: tuple | None = None

    L = property(lambda self: self.delta.dom)
    M = property(lambda self: self.boundary.dom)
    N = property(lambda self: self.boundary.cod)
    C = property(lambda self: self.cproj.cod)


def peiffer_quotient_projection(p):
    """Return the projection ``M -> (M / P2)^ab`` of a pre-crossed module."""
    p2, _ = peiffer_subgroups(p)
    crossed, q1 = quotient(p.M, p2)
    ab, q2 = abelianization(crossed)
    return q2.compose(q1)


def check_quadratic(q):
    """Check the axioms of a quadratic module of nilpotency class 2.

    Axiom ids are ``QM1`` to ``QM4`` with qualifiers, plus ``bilinear left``,
    ``bilinear right`` and ``omega well-defined``.
    """
    report = Report()
    L, M = q.L, q.M
    delta, bd, c = q.delta.map, q.boundary.map, q.cproj.map
    omega = q.omega
    al, am = q.act_l.table, q.act_m.table
    pre = PreCrossedModule(q.boundary, q.act_m)

    report.merge(check_precrossed(pre), "QM1 ")
    w = peiffer_table(pre)
    values = np.unique(w)
    for i, z in np.argwhere(w[values, :] != 0)[:MAX_WITNESSES]:
        report.add("QM1 nil(2)", (values[i], z))
    for x, i in np.argwhere(w[:, values] != 0)[:MAX_WITNESSES]:
        report.add("QM1 nil(2)", (x, values[i]))
    expected = peiffer_quotient_projection(pre)
    if expected.cod.order != q.C.order:
        report.add("QM1 C", (q.C.order, expected.cod.order))
    else:
        mismatch = kernel(expected).mask != kernel(q.cproj).mask
        report.add_where("QM1 C", mismatch)

    report.add_where("QM2 boundary", bd[delta] != 0)
    report.add_where("QM2 lift", delta[omega[c[:, None], c[None, :]]] != w)

    first = np.full((q.C.order, q.C.order), -1, dtype=np.intp)
    first[c[:, None], c[None, :]] = w
    report.add_where("omega well-defined", first[c[:, None], c[None, :]] != w)

    report.add_where("QM3 equivariance delta", delta[al] != am[:, delta])
    for n in range(q.N.order):
        lhs = omega[c[am[n]][:, None], c[am[n]][None, :]]
        rhs = al[n][omega[c[:, None], c[None, :]]]
        report.add_where("QM3 equivariance omega", lhs != rhs, (n,))
    cd = c[delta]
    lhs = al[bd[:, None], L.elements[None, :]]
    rhs = L.mul[L.mul[omega[c[:, None], cd[None, :]], omega[cd[None, :], c[:, None]]], L.elements[None, :]]
    report.add_where("QM3 action", lhs != rhs)

    report.add_where("QM4", omega[cd[:, None], cd[None, :]] != L.commutator_table.T)

    C = q.C
    for x in range(C.order):
        report.add_where("bilinear left", omega[C.mul[x]] != L.mul[omega[x][None, :], omega], (x,))
        right = L.mul[omega[x][:, None], omega[x][None, :]]
        report.add_where("bilinear right", omega[x][C.mul] != right, (x,))

    log.debug("quadratic module check found %d violation(s)", len(report))
    return report


@dataclass(eq=False)
class Cat1Group:
    """A group with endomorphisms ``s``, ``t`` meeting the cat1 conditions."""

    group: object
    s: Hom
    t: Hom
    frame: object = None


def check_cat1(k):
    """Check ``st = t``, ``ts = s`` and ``[ker s, ker t] = 1``."""
    report = Report()
    g, s, t = k.group, k.s.map, k.t.map
    report.add_where("st = t", s[t] != t)
    report.add_where("ts = s", t[s] != s)
    ks = np.flatnonzero(s == 0)
    kt = np.flatnonzero(t == 0)
    left = g.mul[ks[:, None], kt[None, :]]
    right = g.mul[kt[None, :], ks[:, None]]
    for i, j in np.argwhere(left != right)[: MAX_WITNESSES + 1]:
        report.add("[ker s, ker t] = 1", (ks[i], kt[j]))
    return report


@dataclass(eq=False)
class Cat2Group:
    """A group with two commuting cat1 structures.

    ``frame`` is the `SquareFrame` of the semidirect product when the group
    was built from a crossed square.
    """

    group: object
    s1: Hom
    t1: Hom
    s2: Hom
    t2: Hom
    frame: object = None

    def first(self):
        return Cat1Group(self.group, self.s1, self.t1)

    def second(self):
        return Cat1Group(self.group, self.s2, self.t2)


def check_cat2(k):
    """Check both cat1 structures and that their maps commute."""
    report = Report()
    report.merge(check_cat1(k.first()), "1: ")
    report.merge(check_cat1(k.second()), "2: ")
    for label, a, b in (
        ("s1 s2 = s2 s1", k.s1.map, k.s2.map),
        ("t1 t2 = t2 t1", k.t1.map, k.t2.map),
        ("s1 t2 = t2 s1", k.s1.map, k.t2.map),
        ("s2 t1 = t1 s2", k.s2.map, k.t1.map),
    ):
        report.add_where(label, a[b] != b[a])
    return report


def cat1_from_crossed_module(c):
    """Return the cat1-group ``(M x| N, s, t)``.

    ``s(m, n) = (1, n)`` and ``t(m, n) = (1, d(m) n)``.
    """
    sd = semidirect(c.act, f"{c.M.name}x|{c.N.name}" if c.M.name and c.N.name else "")
    g = sd.result
    m, n = sd.unpair(g.elements)
    s = sd.pair(0, n)
    t = sd.pair(0, c.N.mul[c.boundary.map[m], n])
    return Cat1Group(g, Hom(g, g, s), Hom(g, g, t), frame=sd)


def crossed_module_from_cat1(k):
    """Return ``t|: ker s -> im s`` with conjugation as the action.

    Raises
    ------
    NotCat1Error
        If the cat1 conditions fail.
    """
    report = check_cat1(k)
    if not report.ok:
        first = report[0]
        raise NotCat1Error(f"not a cat1-group: {first.axiom} fails at {first.witness}", first.witness)
    ker_s = kernel(k.s)
    im_s = image(k.s)
    boundary = restrict(k.t, ker_s, im_s)
    return CrossedModule(boundary, conjugation_action(im_s, ker_s))


class SquareFrame:
    """Coordinates ``(l, n, m, p)`` on ``(L x| N) x| (M x| P)``."""

    def __init__(self, ln, mp, outer):
        self.ln, self.mp, self.outer = ln, mp, outer

    def split(self, g):
        inner, outer = self.outer.unpair(g)
        l, n = self.ln.unpair(inner)
        m, p = self.mp.unpair(outer)
        return l, n, m, p

    def join(self, l, n, m, p):
        return self.outer.pair(self.ln.pair(l, n), self.mp.pair(m, p))


def cat2_from_crossed_square(s):
    """Return the cat2-group on ``(L x| N) x| (M x| P)`` for a crossed square.

    ``M x| P`` acts on ``L x| N`` by
    ``^(m, p)(l, n) = (^{mu m}(^p l) h(m, ^p n), ^p n)``.
    """
    L, M, N, P = s.L, s.M, s.N, s.P
    ln = semidirect(s.act_l.pullback(s.nu))
    mp = semidirect(s.act_m)
    x, y = np.meshgrid(mp.result.elements, ln.result.elements, indexing="ij")
    m, p = mp.unpair(x)
    l, n = ln.unpair(y)
    pn = s.act_n.table[p, n]
    moved = s.act_l.table[s.mu.map[m], s.act_l.table[p, l]]
    table = ln.pair(L.mul[moved, s.h[m, pn]], pn)
    outer = semidirect(make_action(mp.result, ln.result, table))
    frame = SquareFrame(ln, mp, outer)
    g = outer.result
    g.name = "G"

    l, n, m, p = frame.split(g.elements)
    lam, lamp, mu, nu = s.lam.map, s.lamp.map, s.mu.map, s.nu.map
    s1 = frame.join(0, 0, m, p)
    t1 = frame.join(0, 0, M.mul[lam[l], s.act_m.table[nu[n], m]], P.mul[nu[n], p])
    s2 = frame.join(0, n, 0, p)
    t2 = frame.join(0, N.mul[lamp[l], n], 0, P.mul[mu[m], p])
    log.info("cat2-group of order %d from crossed square", g.order)
    return Cat2Group(g, Hom(g, g, s1), Hom(g, g, t1), Hom(g, g, s2), Hom(g, g, t2), frame=frame)


def crossed_square_from_cat2(k):
    """Return the crossed square of corners ``ker/im s1`` by ``ker/im s2``.

    The h-map is the commutator in the cat2-group.
    """
    for label, cat1 in (("1", k.first()), ("2", k.second())):
        report = check_cat1(cat1)
        if not report.ok:
            first = report[0]
            raise NotCat1Error(f"structure {label} is not a cat1-group: {first.axiom}", first.witness)
    g = k.group
    ker1, im1, ker2, im2 = kernel(k.s1), image(k.s1), kernel(k.s2), image(k.s2)
    corners = {
        "L": intersect(ker1, ker2),
        "M": intersect(im1, ker2),
        "N": intersect(ker1, im2),
        "P": intersect(im1, im2),
    }
    for name, sub in corners.items():
        sub.name = name
    L, M, N, P = (corners[c] for c in "LMNP")
    lam = restrict(k.t1, L, M)
    lamp = restrict(k.t2, L, N)
    mu = restrict(k.t2, M, P)
    nu = restrict(k.t1, N, P)
    comm = g.commutator_table[np.ix_(M.elements, N.elements)]
    h = L.index_of(comm)
    return CrossedSquare(
        lam,
        lamp,
        mu,
        nu,
        conjugation_action(P, L),
        conjugation_action(P, M),
        conjugation_action(P, N),
        h,
    )
