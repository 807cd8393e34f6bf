"""Truncated simplicial and bisimplicial groups.

Levels built here (nerves, binerves, codiagonals) are `TupleGroup` objects:
each element is a tuple of indices into lower groups, so faces and
degeneracies are computed on coordinates and looked up again.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from crossed import (
    Cat1Group,
    CrossedModule,
    NotCat1Error,
    Report,
    cat1_from_crossed_module,
    check_cat1,
)
from groupcore import (
    Action,
    AlgebraError,
    Hom,
    Subgroup,
    TupleGroup,
    hom_violation,
    identity_hom,
    intersect,
    normal_closure,
    restrict,
    semidirect,
    subgroup_generated,
    trivial_subgroup,
)

log = logging.getLogger(__name__)


class MatchingConditionEmptyError(AlgebraError):
    """No tuple at some codiagonal level meets the matching condition."""


class UnsupportedPairingError(AlgebraError):
    """The pairing index is not one of `PAIRINGS`."""


class ElementNotInMooreError(AlgebraError):
    """An element lies outside the Moore term it is required in."""


class DepthTooShallowError(AlgebraError):
    """The simplicial group stops below the level a construction needs."""


@dataclass(eq=False)
class TruncatedSimplicialGroup:
    """Groups ``G_0 .. G_k`` with faces and degeneracies.

    ``faces[n][i]`` is ``d_i: G_n -> G_{n-1}`` (``faces[0]`` is empty) and
    ``degeneracies[n][j]`` is ``s_j: G_n -> G_{n+1}`` for ``n < k``.
    ``frames`` holds the `TupleGroup` of each level when there is one and
    ``source`` the bisimplicial group a codiagonal came from.
    """

    levels: list
    faces: list
    degeneracies: list
    name: str = ""
    frames: list | None = None
    source: object = None

    @property
    def depth(self):
        return len(self.levels) - 1

    def d(self, n, i):
        return self.faces[n][i]

    def s(self, n, j):
        return self.degeneracies[n][j]


def require_depth(g, depth, what):
    """Raise `DepthTooShallowError` unless ``g`` reaches ``depth``."""
    if g.depth < depth:
        raise DepthTooShallowError(f"{what} needs depth {depth}, got {g.depth}", (g.depth,))


def check_simplicial(g):
    """Check endpoints and the simplicial identities."""
    report = Report()
    k = g.depth
    levels, faces, degens = g.levels, g.faces, g.degeneracies
    if len(faces) != k + 1 or len(degens) != k:
        report.add("shape", (len(faces), len(degens)))
        return report
    for n in range(1, k + 1):
        if len(faces[n]) != n + 1:
            report.add("shape", (n,))
        for i, d in enumerate(faces[n]):
            if d.dom is not levels[n] or d.cod is not levels[n - 1]:
                report.add("endpoints d", (n, i))
    for n in range(k):
        if len(degens[n]) != n + 1:
            report.add("shape", (n,))
        for j, s in enumerate(degens[n]):
            if s.dom is not levels[n] or s.cod is not levels[n + 1]:
                report.add("endpoints s", (n, j))
    if not report.ok:
        return report

    for n in range(2, k + 1):
        for j in range(n + 1):
            for i in range(j):
                lhs = faces[n - 1][i].map[faces[n][j].map]
                rhs = faces[n - 1][j - 1].map[faces[n][i].map]
                report.add_where("d_i d_j", lhs != rhs, (n, i, j))
    for n in range(k - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                lhs = degens[n + 1][i].map[degens[n][j].map]
                rhs = degens[n + 1][j + 1].map[degens[n][i].map]
                report.add_where("s_i s_j", lhs != rhs, (n, i, j))
    for n in range(k):
        ident = levels[n].elements
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = faces[n + 1][i].map[degens[n][j].map]
                if i < j:
                    rhs = degens[n - 1][j - 1].map[faces[n][i].map]
                elif i in (j, j + 1):
                    rhs = ident
                else:
                    rhs = degens[n - 1][j].map[faces[n][i - 1].map]
                report.add_where("d_i s_j", lhs != rhs, (n, i, j))
    log.debug("simplicial check of %s found %d violation(s)", g.name or "group", len(report))
    return report


class MooreComplex:
    """``NG_n``, the intersection of the kernels of ``d_0 .. d_{n-1}``.

    The boundary ``NG_n -> NG_{n-1}`` is the restriction of ``d_n``.
    """

    def __init__(self, g):
        self.simplicial = g
        self.terms = []
        for n, level in enumerate(g.levels):
            mask = np.ones(level.order, dtype=bool)
            for i in range(n):
                mask &= g.faces[n][i].map == 0
            self.terms.append(Subgroup(level, np.flatnonzero(mask), f"NG{n}"))
        self.boundaries = [None]
        for n in range(1, g.depth + 1):
            bd = restrict(g.faces[n][n], self.terms[n], self.terms[n - 1])
            if n >= 2 and not self.boundaries[-1].compose(bd).is_trivial():
                raise AlgebraError(f"Moore boundaries at level {n} do not compose trivially", (n,))
            self.boundaries.append(bd)

    def boundary(self, n):
        return self.boundaries[n]

    def boundary_image(self, n):
        """Return ``d_n(NG_n)`` as a subgroup of ``G_{n-1}``."""
        level = self.simplicial.levels[n - 1]
        return Subgroup(level, np.unique(self.simplicial.faces[n][n].map[self.terms[n].elements]))


def moore_complex(g):
    """Return the `MooreComplex` of ``g``."""
    return MooreComplex(g)


def _nerve(base, s, t, depth):
    """Return levels, faces and degeneracies of the nerve of ``(base, s, t)``.

    Level 0 holds the objects ``im s``; level ``n >= 1`` holds composable
    ``n``-tuples ``(g_1, .., g_n)`` with ``t(g_i) = s(g_{i+1})``. Maps are
    index arrays.
    """
    objects = np.unique(s)
    levels = [TupleGroup([base], objects[:, None])]
    if depth >= 1:
        levels.append(TupleGroup([base], base.elements[:, None]))
    by_source = {int(v): np.flatnonzero(s == v) for v in objects}
    rows = base.elements[:, None]
    for n in range(2, depth + 1):
        chunks = []
        ends = t[rows[:, -1]]
        for v, cands in by_source.items():
            sel = rows[ends == v]
            if sel.size:
                left = np.repeat(sel, cands.size, axis=0)
                right = np.tile(cands, sel.shape[0])
                chunks.append(np.column_stack([left, right]))
        rows = np.vstack(chunks)
        levels.append(TupleGroup([base] * n, rows))

    faces = [[]]
    for n in range(1, depth + 1):
        c = levels[n].coords
        if n == 1:
            faces.append([levels[0].index_of(t[c]), levels[0].index_of(s[c])])
            continue
        maps = []
        for j in range(n + 1):
            if j == 0:
                new = c[:, 1:]
            elif j == n:
                new = c[:, :-1]
            else:
                a, b = c[:, j - 1], c[:, j]
                composite = base.mul[base.mul[a, base.inv[t[a]]], b]
                new = np.column_stack([c[:, : j - 1], composite, c[:, j + 1 :]])
            maps.append(levels[n - 1].index_of(new))
        faces.append(maps)

    degens = []
    for n in range(depth):
        c = levels[n].coords
        if n == 0:
            degens.append([levels[1].index_of(c)])
            continue
        maps = []
        for j in range(n + 1):
            unit = s[c[:, 0]] if j == 0 else t[c[:, j - 1]]
            maps.append(levels[n + 1].index_of(np.column_stack([c[:, :j], unit, c[:, j:]])))
        degens.append(maps)
    return levels, faces, degens


def _wrap(levels, faces, degens, name, frames=None):
    groups = [lv.group if isinstance(lv, TupleGroup) else lv for lv in levels]
    hom_faces = [[]] + [[Hom(groups[n], groups[n - 1], m) for m in faces[n]] for n in range(1, len(groups))]
    hom_degens = [[Hom(groups[n], groups[n + 1], m) for m in degens[n]] for n in range(len(groups) - 1)]
    return TruncatedSimplicialGroup(groups, hom_faces, hom_degens, name, frames)


def nerve_cat1(c, depth):
    """Return the nerve of a cat1-group truncated at ``depth``.

    Parameters
    ----------
    c : `Cat1Group` or `CrossedModule`
        A crossed module is converted to its cat1-group first.
    depth : `int`
        Highest level to build.
    """
    if isinstance(c, CrossedModule):
        c = cat1_from_crossed_module(c)
    elif isinstance(c, Cat1Group):
        report = check_cat1(c)
        if not report.ok:
            raise NotCat1Error(f"not a cat1-group: {report[0].axiom}", report[0].witness)
    levels, faces, degens = _nerve(c.group, c.s.map, c.t.map, depth)
    for n, level in enumerate(levels):
        level.group.name = f"G{n}"
    log.info("nerve levels of order %s", [lv.order for lv in levels])
    return _wrap(levels, faces, degens, "nerve", levels)


def constant_simplicial(group, depth):
    """Return the constant simplicial group on ``group``."""
    ident = identity_hom(group)
    faces = [[]] + [[ident] * (n + 1) for n in range(1, depth + 1)]
    degens = [[ident] * (n + 1) for n in range(depth)]
    return TruncatedSimplicialGroup([group] * (depth + 1), faces, degens, "constant")


@dataclass(eq=False)
class TruncatedBisimplicialGroup:
    """Groups ``G_{p,q}`` for ``p + q <= depth`` with two commuting
    families of faces and degeneracies.

    ``p`` is the vertical degree, ``q`` the horizontal one. ``horizontal[q]``
    is level ``q`` of the horizontal nerve and each cell is a `TupleGroup`
    of tuples of its elements.
    """

    depth: int
    cells: dict
    horizontal: list
    hfaces: dict
    vfaces: dict
    hdegens: dict
    vdegens: dict
    source: object = None

    def group(self, p, q):
        return self.cells[(p, q)].group

    def column(self, q):
        top = self.depth - q
        levels = [self.group(p, q) for p in range(top + 1)]
        faces = [self.vfaces[(p, q)] for p in range(top + 1)]
        degens = [self.vdegens[(p, q)] for p in range(top)]
        return TruncatedSimplicialGroup(levels, faces, degens, f"column {q}")

    def row(self, p):
        top = self.depth - p
        levels = [self.group(p, q) for q in range(top + 1)]
        faces = [self.hfaces[(p, q)] for q in range(top + 1)]
        degens = [self.hdegens[(p, q)] for q in range(top)]
        return TruncatedSimplicialGroup(levels, faces, degens, f"row {p}")

    def flatten(self, p, q, x):
        """Return the underlying group elements of cell elements ``x``.

        The result has shape ``x.shape + (max(p, 1), max(q, 1))``.
        """
        cell = self.cells[(p, q)]
        return self.horizontal[q].coords[cell.coords[x]]


def binerve(k, depth=2):
    """Return the bisimplicial nerve of a cat2-group.

    The first structure ``(s1, t1)`` is nerved horizontally; each horizontal
    level is then nerved vertically along ``(s2, t2)``.
    """
    g = k.group
    h_levels, h_faces, h_degens = _nerve(g, k.s1.map, k.t1.map, depth)
    cells, vfaces, vdegens, hfaces, hdegens = {}, {}, {}, {}, {}
    for q, hq in enumerate(h_levels):
        s2 = hq.index_of(k.s2.map[hq.coords])
        t2 = hq.index_of(k.t2.map[hq.coords])
        v_levels, v_faces, v_degens = _nerve(hq.group, s2, t2, depth - q)
        for p, cell in enumerate(v_levels):
            cell.group.name = f"G{p},{q}"
            cells[(p, q)] = cell
        for p in range(len(v_levels)):
            vfaces[(p, q)] = [Hom(cells[(p, q)].group, cells[(p - 1, q)].group, m) for m in v_faces[p]]
            if p < len(v_degens):
                vdegens[(p, q)] = [Hom(cells[(p, q)].group, cells[(p + 1, q)].group, m) for m in v_degens[p]]
            else:
                vdegens[(p, q)] = []
    for (p, q), cell in cells.items():
        hfaces[(p, q)] = []
        if q >= 1:
            below = cells[(p, q - 1)]
            for hmap in h_faces[q]:
                hfaces[(p, q)].append(Hom(cell.group, below.group, below.index_of(hmap[cell.coords])))
        hdegens[(p, q)] = []
        if (p, q + 1) in cells:
            above = cells[(p, q + 1)]
            for hmap in h_degens[q]:
                hdegens[(p, q)].append(Hom(cell.group, above.group, above.index_of(hmap[cell.coords])))
    log.info("binerve cells %s", {key: cell.order for key, cell in sorted(cells.items())})
    return TruncatedBisimplicialGroup(depth, cells, h_levels, hfaces, vfaces, hdegens, vdegens, k)


def check_bisimplicial(b):
    """Check each row and column, and that the two directions commute."""
    report = Report()
    for q in range(b.depth + 1):
        report.merge(check_simplicial(b.column(q)), f"vertical q={q}: ")
    for p in range(b.depth + 1):
        report.merge(check_simplicial(b.row(p)), f"horizontal p={p}: ")
    if not report.ok:
        return report
    hf, vf, hs, vs = b.hfaces, b.vfaces, b.hdegens, b.vdegens
    for p, q in b.cells:
        for i in range(q + 1):
            for j in range(p + 1):
                if p >= 1 and q >= 1:
                    lhs = hf[(p - 1, q)][i].map[vf[(p, q)][j].map]
                    rhs = vf[(p, q - 1)][j].map[hf[(p, q)][i].map]
                    report.add_where("dh dv", lhs != rhs, (p, q, i, j))
                if q >= 1 and (p + 1, q) in b.cells:
                    lhs = hf[(p + 1, q)][i].map[vs[(p, q)][j].map]
                    rhs = vs[(p, q - 1)][j].map[hf[(p, q)][i].map]
                    report.add_where("dh sv", lhs != rhs, (p, q, i, j))
                if p >= 1 and (p, q + 1) in b.cells:
                    lhs = hs[(p - 1, q)][i].map[vf[(p, q)][j].map]
                    rhs = vf[(p, q + 1)][j].map[hs[(p, q)][i].map]
                    report.add_where("sh dv", lhs != rhs, (p, q, i, j))
                if (p + 1, q + 1) in b.cells:
                    lhs = hs[(p + 1, q)][i].map[vs[(p, q)][j].map]
                    rhs = vs[(p, q + 1)][j].map[hs[(p, q)][i].map]
                    report.add_where("sh sv", lhs != rhs, (p, q, i, j))
    return report


def codiagonal(b, depth=2):
    """Return the codiagonal (total) simplicial group of a bisimplicial group.

    Level ``n`` holds tuples ``(x_0, .., x_n)`` with ``x_k`` in ``G_{n-k,k}``
    and ``d^v_0 x_k = d^h_{k+1} x_{k+1}``.

    Raises
    ------
    DepthTooShallowError
        If ``b`` does not reach ``depth``.
    MatchingConditionEmptyError
        If the matching condition leaves out the identity tuple.
    """
    if b.depth < depth:
        raise DepthTooShallowError(f"codiagonal of depth {depth} needs a binerve that deep", (b.depth,))
    frames = []
    for n in range(depth + 1):
        comps = [b.cells[(n - k, k)] for k in range(n + 1)]
        rows = comps[0].group.elements[:, None]
        for k in range(n):
            need = b.vfaces[(n - k, k)][0].map[rows[:, k]]
            hmap = b.hfaces[(n - k - 1, k + 1)][k + 1].map
            order = np.argsort(hmap, kind="stable")
            ordered = hmap[order]
            starts = np.searchsorted(ordered, need, side="left")
            stops = np.searchsorted(ordered, need, side="right")
            counts = stops - starts
            picked = [order[a:z] for a, z in zip(starts, stops)]
            cand = np.concatenate(picked) if picked else np.empty(0, dtype=np.intp)
            rows = np.column_stack([np.repeat(rows, counts, axis=0), cand])
        if not (rows == 0).all(axis=1).any():
            message = f"no identity tuple meets the matching condition at level {n}"
            raise MatchingConditionEmptyError(message, (n,))
        frames.append(TupleGroup([c.group for c in comps], rows, f"∇{n}"))

    faces = [[]]
    for n in range(1, depth + 1):
        c = frames[n].coords
        maps = []
        for j in range(n + 1):
            parts = []
            for i in range(n):
                if i < j:
                    parts.append(b.vfaces[(n - i, i)][j - i].map[c[:, i]])
                else:
                    parts.append(b.hfaces[(n - i - 1, i + 1)][j].map[c[:, i + 1]])
            maps.append(frames[n - 1].index_of(np.column_stack(parts)))
        faces.append(maps)
    degens = []
    for n in range(depth):
        c = frames[n].coords
        maps = []
        for j in range(n + 1):
            parts = []
            for k in range(n + 2):
                if k <= j:
                    parts.append(b.vdegens[(n - k, k)][j - k].map[c[:, k]])
                else:
                    parts.append(b.hdegens[(n - k + 1, k - 1)][j].map[c[:, k - 1]])
            maps.append(frames[n + 1].index_of(np.column_stack(parts)))
        degens.append(maps)
    log.info("codiagonal levels of order %s", [f.order for f in frames])
    result = _wrap(frames, faces, degens, "codiagonal", frames)
    result.source = b
    return result


@dataclass(eq=False)
class ExplicitCodiagonal:
    """Coordinates of the low codiagonal levels of a crossed square's binerve.

    ``level0[x]`` is ``p``; ``level1[x]`` is ``(n, m, p)``; ``level2[x]`` is
    ``(l, n, m1, n1, m2, p)``.
    """

    square: object
    level0: np.ndarray
    level1: np.ndarray
    level2: np.ndarray
    level1_group: object = field(default=None)


def explicit_codiagonal(square, nab):
    """Read off square coordinates of a codiagonal.

    ``nab`` must come from ``cat2_from_crossed_square(square)``.
    """
    b = nab.source
    frame = getattr(b.source, "frame", None)
    if frame is None:
        raise AlgebraError("the cat2-group carries no crossed square coordinates")
    f0, f1, f2 = nab.frames[:3]

    g = b.flatten(0, 0, f0.coords[:, 0])[:, 0, 0]
    level0 = frame.split(g)[3]

    g0 = b.flatten(1, 0, f1.coords[:, 0])[:, 0, 0]
    g1 = b.flatten(0, 1, f1.coords[:, 1])[:, 0, 0]
    _, _, m, p = frame.split(g0)
    n = frame.split(g1)[1]
    level1 = np.column_stack([n, m, p])

    x0 = b.flatten(2, 0, f2.coords[:, 0])
    x1 = b.flatten(1, 1, f2.coords[:, 1])[:, 0, 0]
    x2 = b.flatten(0, 2, f2.coords[:, 2])
    _, _, m2, p = frame.split(x0[:, 0, 0])
    m1 = frame.split(x0[:, 1, 0])[2]
    l, n = frame.split(x1)[:2]
    n1 = frame.split(x2[:, 0, 1])[1]
    level2 = np.column_stack([l, n, m1, n1, m2, p])

    mp = semidirect(square.act_m)
    m_, p_ = mp.unpair(mp.result.elements)
    table = square.act_n.table[square.P.mul[square.mu.map[m_], p_]]
    outer = semidirect(Action(mp.result, square.N, table), "Nx|(Mx|P)")
    return ExplicitCodiagonal(square, level0, level1, level2, outer)


def _encode(columns, radices):
    code = np.zeros(columns.shape[0], dtype=np.int64)
    for i, r in enumerate(radices):
        code = code * r + columns[:, i]
    return code


def check_explicit_codiagonal(square, nab):
    """Check the square coordinates of the codiagonal against closed forms.

    Covers bijectivity of the coordinates, the level 1 group isomorphism
    ``(n, m, p) -> N x| (M x| P)``, and every face and degeneracy through
    level 2.
    """
    report = Report()
    ex = explicit_codiagonal(square, nab)
    L, M, N, P = square.L, square.M, square.N, square.P
    lam, lamp, mu, nu = square.lam.map, square.lamp.map, square.mu.map, square.nu.map
    tm = square.act_m.table

    if np.unique(ex.level0).size != nab.levels[0].order or nab.levels[0].order != P.order:
        report.add("level 0 coordinates", (nab.levels[0].order,))
    sizes1 = (N.order, M.order, P.order)
    codes1 = _encode(ex.level1, sizes1)
    if np.unique(codes1).size != nab.levels[1].order or nab.levels[1].order != np.prod(sizes1):
        report.add("level 1 coordinates", (nab.levels[1].order,))
    sizes2 = (L.order, N.order, M.order, N.order, M.order, P.order)
    codes2 = _encode(ex.level2, sizes2)
    if np.unique(codes2).size != nab.levels[2].order or nab.levels[2].order != np.prod(sizes2):
        report.add("level 2 coordinates", (nab.levels[2].order,))
    if not report.ok:
        return report

    n, m, p = ex.level1.T
    images = n + N.order * (m + M.order * p)
    pair = hom_violation(nab.levels[1], ex.level1_group.result, images)
    if pair is not None:
        report.add("level 1 isomorphism", pair)

    f = nab.faces
    report.add_where("d0 level 1", ex.level0[f[1][0].map] != P.mul[P.mul[nu[n], mu[m]], p])
    report.add_where("d1 level 1", ex.level0[f[1][1].map] != p)

    l, n, m1, n1, m2, p = ex.level2.T
    closed = [
        (n1, M.mul[lam[l], tm[nu[n], m1]], P.mul[P.mul[nu[n], mu[m2]], p]),
        (N.mul[N.mul[n1, lamp[l]], n], M.mul[m1, m2], p),
        (n, m2, p),
    ]
    for j, expected in enumerate(closed):
        got = ex.level1[f[2][j].map]
        report.add_where(f"d{j} level 2", (got != np.column_stack(expected)).any(axis=1))

    s = nab.degeneracies
    got = ex.level1[s[0][0].map]
    zero0 = np.zeros_like(ex.level0)
    report.add_where("s0 level 0", (got != np.column_stack([zero0, zero0, ex.level0])).any(axis=1))
    n, m, p = ex.level1.T
    zero1 = np.zeros_like(n)
    for j, expected in enumerate(
        [
            (zero1, zero1, m, n, zero1, p),
            (zero1, n, zero1, zero1, m, p),
        ]
    ):
        got = ex.level2[s[1][j].map]
        report.add_where(f"s{j} level 1", (got != np.column_stack(expected)).any(axis=1))
    return report


def degenerate_subgroup(g, n):
    """Return ``D_n``, the subgroup of ``G_n`` generated by degeneracies."""
    if n == 0:
        return trivial_subgroup(g.levels[0])
    gens = np.concatenate([s.map for s in g.degeneracies[n - 1]])
    return subgroup_generated(g.levels[n], np.unique(gens))


class PairingIndex(NamedTuple):
    """``F_{alpha,beta}`` at level ``n``; outermost degeneracy first."""

    n: int
    alpha: tuple
    beta: tuple

    def label(self):
        return "(" + ",".join(map(str, self.alpha)) + ")(" + ",".join(map(str, self.beta)) + ")"


PAIRINGS = {
    2: (PairingIndex(2, (1,), (0,)),),
    3: (
        PairingIndex(3, (1, 0), (2,)),
        PairingIndex(3, (2, 0), (1,)),
        PairingIndex(3, (0,), (2, 1)),
        PairingIndex(3, (0,), (1,)),
        PairingIndex(3, (0,), (2,)),
        PairingIndex(3, (1,), (2,)),
    ),
}
"""Index pairs whose pairings generate ``NG_n ∩ D_n`` for ``n = 2, 3``."""


def _validate_index(g, index):
    index = PairingIndex(index[0], tuple(index[1]), tuple(index[2]))
    if index not in PAIRINGS.get(index.n, ()):
        message = f"pairing {index.label()} at level {index.n} is not supported"
        raise UnsupportedPairingError(message, (index.n,))
    require_depth(g, index.n, "pairing")
    return index


def _degeneracy_map(g, level, alpha):
    """Return ``s_alpha`` on ``G_level``; the last index applies first."""
    images = g.levels[level].elements
    for idx in reversed(alpha):
        images = g.degeneracies[level][idx].map[images]
        level += 1
    return images


def _projection_map(g, n):
    """Return ``p = p_{n-1} o .. o p_0`` with ``p_j(z) = z (s_j d_j z)^-1``."""
    group = g.levels[n]
    z = group.elements
    for j in range(n):
        sd = g.degeneracies[n - 1][j].map[g.faces[n][j].map]
        z = group.mul[z, group.inv[sd[z]]]
    return z


def _commutators(group, a, b):
    """``[a, b]`` elementwise with broadcasting."""
    return group.mul[group.mul[a, b], group.mul[group.inv[a], group.inv[b]]]


def pairing_table(g, index, moore=None):
    """Return ``(xs, ys, values)`` with ``values[i, j] = F(xs[i], ys[j])``.

    ``xs`` and ``ys`` enumerate the Moore terms the pairing takes its
    arguments from.
    """
    index = _validate_index(g, index)
    moore = moore or moore_complex(g)
    n = index.n
    a_level, b_level = n - len(index.alpha), n - len(index.beta)
    xs = moore.terms[a_level].elements
    ys = moore.terms[b_level].elements
    sx = _degeneracy_map(g, a_level, index.alpha)[xs]
    sy = _degeneracy_map(g, b_level, index.beta)[ys]
    values = _projection_map(g, n)[_commutators(g.levels[n], sx[:, None], sy[None, :])]
    return xs, ys, values


def peiffer_pairing(g, index, x, y):
    """Return ``F_{alpha,beta}(x, y) = p[s_alpha x, s_beta y]`` in ``NG_n``.

    Raises
    ------
    UnsupportedPairingError
        For index pairs outside `PAIRINGS`.
    ElementNotInMooreError
        If an argument or the value is not in the relevant Moore term.
    """
    index = _validate_index(g, index)
    moore = moore_complex(g)
    n = index.n
    a_level, b_level = n - len(index.alpha), n - len(index.beta)
    if x not in moore.terms[a_level]:
        raise ElementNotInMooreError(f"{x} is not in NG{a_level}", (x,))
    if y not in moore.terms[b_level]:
        raise ElementNotInMooreError(f"{y} is not in NG{b_level}", (y,))
    sx = _degeneracy_map(g, a_level, index.alpha)[x]
    sy = _degeneracy_map(g, b_level, index.beta)[y]
    value = int(_projection_map(g, n)[g.levels[n].commutator(sx, sy)])
    if value not in moore.terms[n]:
        raise ElementNotInMooreError(f"pairing value {value} is not in NG{n}", (x, y, value))
    return value


def pairing_normal_subgroup(g, n):
    """Return the normal closure in ``G_n`` of every supported pairing."""
    if n not in PAIRINGS:
        raise UnsupportedPairingError(f"no pairings are defined at level {n}", (n,))
    moore = moore_complex(g)
    gens = [pairing_table(g, index, moore)[2].ravel() for index in PAIRINGS[n]]
    return normal_closure(g.levels[n], np.unique(np.concatenate(gens)))


def _explicit_pairings(g, n, moore):
    """Yield ``(index, values)``, each pairing expanded into commutators."""
    group = g.levels[n]
    mul = group.mul

    def c(a, b):
        return _commutators(group, a, b)

    def prod(*parts):
        out = parts[0]
        for part in parts[1:]:
            out = mul[out, part]
        return out

    if n == 2:
        s0, s1 = (s.map for s in g.degeneracies[1])
        xs = moore.terms[1].elements
        x, y = xs[:, None], xs[None, :]
        yield PAIRINGS[2][0], prod(c(s1[x], s0[y]), c(s1[y], s1[x]))
        return
    t0, t1, t2 = (s.map for s in g.degeneracies[2])
    u0, u1 = (s.map for s in g.degeneracies[1])
    ng1, ng2 = moore.terms[1].elements, moore.terms[2].elements
    x, y = ng1[:, None], ng2[None, :]
    yield PAIRINGS[3][0], prod(c(t1[u0[x]], t2[y]), c(t2[y], t2[u0[x]]))
    yield PAIRINGS[3][1], prod(
        c(t2[u0[x]], t1[y]), c(t1[y], t2[u1[x]]), c(t2[u1[x]], t2[y]), c(t2[y], t2[u0[x]])
    )
    x, y = ng2[:, None], ng1[None, :]
    yield PAIRINGS[3][2], prod(c(t0[x], t2[u1[y]]), c(t2[u1[y]], t1[x]), c(t2[x], t2[u1[y]]))
    x, y = ng2[:, None], ng2[None, :]
    yield PAIRINGS[3][3], prod(c(t0[x], t1[y]), c(t1[y], t1[x]), c(t2[x], t2[y]))
    yield PAIRINGS[3][4], c(t0[x], t2[y])
    yield PAIRINGS[3][5], prod(c(t1[x], t2[y]), c(t2[y], t2[x]))


def check_pairing_formulas(g):
    """Compare every supported pairing with its expansion into commutators."""
    report = Report()
    moore = moore_complex(g)
    for n in (2, 3):
        if g.depth < n:
            break
        for index, expected in _explicit_pairings(g, n, moore):
            got = pairing_table(g, index, moore)[2]
            report.add_where(f"pairing {index.label()}", got != expected)
    return report


def check_pairing_congruences(g):
    """Check ``d_3`` of three level 3 pairings against closed forms."""
    require_depth(g, 3, "pairing boundaries")
    report = Report()
    moore = moore_complex(g)
    group = g.levels[2]
    mul = group.mul
    s0, s1 = (s.map for s in g.degeneracies[1])
    d2 = g.faces[2][2].map
    d3 = g.faces[3][3].map

    def c(a, b):
        return _commutators(group, a, b)

    ng1, ng2 = moore.terms[1].elements, moore.terms[2].elements
    x, a = ng1[:, None], ng2[None, :]
    got = d3[pairing_table(g, PAIRINGS[3][1], moore)[2]]
    expected = mul[mul[mul[c(s0[x], s1[d2[a]]), c(s1[d2[a]], s1[x])], c(s1[x], a)], c(a, s0[x])]
    report.add_where("boundary (2,0)(1)", got != expected)

    a, x = ng2[:, None], ng1[None, :]
    got = d3[pairing_table(g, PAIRINGS[3][2], moore)[2]]
    expected = mul[mul[c(s0[d2[a]], s1[x]), c(s1[x], s1[d2[a]])], c(a, s1[x])]
    report.add_where("boundary (0)(2,1)", got != expected)

    a, b2 = ng2[:, None], ng2[None, :]
    got = d3[pairing_table(g, PAIRINGS[3][3], moore)[2]]
    expected = mul[mul[c(s0[d2[a]], s1[d2[b2]]), c(s1[d2[b2]], s1[d2[a]])], c(a, b2)]
    report.add_where("boundary (0)(1)", got != expected)
    return report


def moore_degenerate_intersections(g, n):
    """Return ``(NG_n ∩ D_n, N_n ∩ D_n)``; pairings generate ``N_n``."""
    moore = moore_complex(g)
    dn = degenerate_subgroup(g, n)
    return intersect(moore.terms[n], dn), intersect(pairing_normal_subgroup(g, n), dn)


def check_moore_theorem(g, n):
    """Check that ``NG_n ∩ D_n`` equals ``N_n ∩ D_n``."""
    report = Report()
    left, right = moore_degenerate_intersections(g, n)
    report.add_where(f"NG{n} ∩ D{n} = N{n} ∩ D{n}", left.mask != right.mask)
    return report
