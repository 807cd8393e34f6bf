"""Finite groups stored as multiplication tables.

Every group in this package is an ``order x order`` table of element
indices with the identity at index 0. All of the algebra built on top of it
(homomorphisms, actions, subgroups, quotients, semidirect products) is
exhaustive over those indices.
"""

from __future__ import annotations

import itertools
import logging
import os
from collections import Counter
from functools import cached_property

import numpy as np

log = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 64
"""Largest group order accepted by the isomorphism search."""

_max_order_override = None


def set_max_order(bound):
    """Override the isomorphism bound for the rest of the process.

    Parameters
    ----------
    bound : `int` or `None`
        New bound. `None` restores the environment/default lookup.
    """
    global _max_order_override
    _max_order_override = None if bound is None else int(bound)


def max_order():
    """Return the isomorphism bound currently in force.

    The value set by `set_max_order` wins, then the ``XSQUARE_MAX_ORDER``
    environment variable, then `DEFAULT_MAX_ORDER`.
    """
    if _max_order_override is not None:
        return _max_order_override
    env = os.environ.get("XSQUARE_MAX_ORDER")
    if env:
        return int(env)
    return DEFAULT_MAX_ORDER


class AlgebraError(ValueError):
    """Base class for algebraic failures.

    Parameters
    ----------
    message : `str`
        Human readable description.
    witness : `tuple` of `int`, optional
        Element indices that exhibit the failure.
    """

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(int(w) for w in witness)


class NonAssociativeError(AlgebraError):
    """A multiplication table is not associative."""


class NoIdentityError(AlgebraError):
    """A multiplication table has no two-sided identity."""


class NoInverseError(AlgebraError):
    """Some element has no inverse."""


class NotHomomorphismError(AlgebraError):
    """A map does not respect multiplication."""


class RowNotAutomorphismError(AlgebraError):
    """A row of an action table is not an automorphism of the target."""


class NotActionError(AlgebraError):
    """An action table breaks ``^1 m = m`` or ``^{g h} m = ^g(^h m)``."""


class NotNormalError(AlgebraError):
    """A subgroup used as a divisor is not normal."""


class OrderTooLargeError(AlgebraError):
    """A group is larger than the isomorphism search bound."""


class Group:
    """A finite group given by its multiplication table.

    ``mul[a, b]`` is the index of ``a*b`` and element 0 is the identity.
    The constructor trusts its input; tables from outside the package go
    through `make_group`.

    Parameters
    ----------
    mul : array-like
        Square table of element indices.
    name : `str`, optional
        Label used in reports.
    builtin : `tuple`, optional
        ``(kind, n)`` when the group came from a named constructor, so it
        can be serialized without its table.
    """

    def __init__(self, mul, name="", builtin=None):
        self.mul = np.ascontiguousarray(mul, dtype=np.intp)
        self.order = int(self.mul.shape[0])
        self.name = name
        self.builtin = builtin

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"Group({self.name or '?'}, order={self.order})"

    @property
    def elements(self):
        return np.arange(self.order, dtype=np.intp)

    @cached_property
    def inv(self):
        return np.argmax(self.mul == 0, axis=1).astype(np.intp)

    def op(self, a, b):
        return int(self.mul[a, b])

    def inverse(self, a):
        return int(self.inv[a])

    def conjugate(self, g, x):
        """Return ``g x g^-1``."""
        return int(self.mul[self.mul[g, x], self.inv[g]])

    def commutator(self, a, b):
        """Return ``[a, b] = a b a^-1 b^-1``."""
        return int(self.mul[self.mul[a, b], self.mul[self.inv[a], self.inv[b]]])

    @cached_property
    def conjugation_table(self):
        # [g, x] -> g x g^-1
        return self.mul[self.mul, self.inv[:, None]]

    @cached_property
    def commutator_table(self):
        # [a, b] -> a b a^-1 b^-1
        return self.mul[self.mul, self.mul[self.inv[:, None], self.inv[None, :]]]

    def is_abelian(self):
        return bool(np.array_equal(self.mul, self.mul.T))

    @cached_property
    def element_orders(self):
        orders = np.zeros(self.order, dtype=np.intp)
        current = self.elements.copy()
        for k in range(1, self.order + 1):
            hit = (current == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            current = self.mul[current, self.elements]
        return orders

    def element_order(self, x):
        return int(self.element_orders[x])

    def same_table(self, other):
        return self.order == other.order and bool(np.array_equal(self.mul, other.mul))


def make_group(table, name=""):
    """Validate a multiplication table and return a `Group`.

    If the identity is not at index 0 the elements are relabeled by swapping
    it with 0, so the result is canonical.

    Parameters
    ----------
    table : array-like
        Square table with entries below its side length.
    name : `str`, optional
        Label for the group.

    Returns
    -------
    group : `Group`
        The validated group.

    Raises
    ------
    NoIdentityError
        No two-sided identity exists.
    NoInverseError
        Some element has no two-sided inverse.
    NonAssociativeError
        Some triple ``(a, b, c)`` violates associativity.
    """
    mul = np.asarray(table)
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise AlgebraError(f"multiplication table must be a non-empty square array, got shape {mul.shape}")
    if not np.issubdtype(mul.dtype, np.integer):
        raise AlgebraError("multiplication table entries must be integers")
    n = mul.shape[0]
    mul = mul.astype(np.intp)
    out_of_range = (mul < 0) | (mul >= n)
    if out_of_range.any():
        a, b = np.argwhere(out_of_range)[0]
        raise AlgebraError(f"entry [{a}][{b}] = {mul[a, b]} is not an element index", (a, b))

    idx = np.arange(n)
    candidates = np.flatnonzero((mul == idx).all(axis=1) & (mul.T == idx).all(axis=1))
    if candidates.size == 0:
        raise NoIdentityError("no element e satisfies e*x = x*e = x for every x")
    e = int(candidates[0])

    hits = mul == e
    has_right = hits.any(axis=1)
    right = np.argmax(hits, axis=1)
    two_sided = has_right & (mul[right, idx] == e)
    if not two_sided.all():
        a = int(np.flatnonzero(~two_sided)[0])
        raise NoInverseError(f"element {a} has no two-sided inverse", (a,))

    for a in range(n):
        left = mul[mul[a], :]
        right_assoc = mul[a][mul]
        bad = np.argwhere(left != right_assoc)
        if bad.size:
            b, c = bad[0]
            raise NonAssociativeError(f"({a}*{b})*{c} != {a}*({b}*{c})", (a, b, c))

    if e != 0:
        perm = idx.copy()
        perm[0], perm[e] = e, 0
        mul = perm[mul[np.ix_(perm, perm)]]
        log.debug("relabeled identity %d to index 0 in %s", e, name or "group")
    return Group(mul, name)


class Hom:
    """A group homomorphism ``dom -> cod`` given by its image array."""

    def __init__(self, dom, cod, map, name=""):
        self.dom = dom
        self.cod = cod
        self.map = np.ascontiguousarray(map, dtype=np.intp)
        self.name = name

    def __call__(self, x):
        return int(self.map[x])

    def __repr__(self):
        return f"Hom({self.name or '?'}: {self.dom!r} -> {self.cod!r})"

    def compose(self, inner):
        """Return ``self o inner``."""
        return Hom(inner.dom, self.cod, self.map[inner.map])

    def is_trivial(self):
        return not self.map.any()

    def is_bijective(self):
        return self.dom.order == self.cod.order and np.unique(self.map).size == self.cod.order


def hom_violation(dom, cod, images):
    """Return the first ``(x, y)`` with ``f(xy) != f(x)f(y)``, or `None`."""
    lhs = images[dom.mul]
    rhs = cod.mul[images[:, None], images[None, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        return tuple(int(v) for v in bad[0])
    return None


def make_hom(dom, cod, map, name=""):
    """Validate an image array and return a `Hom`.

    Raises
    ------
    NotHomomorphismError
        Names the first pair ``(x, y)`` where multiplicativity fails.
    """
    images = np.asarray(map)
    if images.shape != (dom.order,):
        raise AlgebraError(f"map must have length {dom.order}, got shape {images.shape}")
    if not np.issubdtype(images.dtype, np.integer):
        raise AlgebraError("map entries must be integers")
    images = images.astype(np.intp)
    if images.size and (images.min() < 0 or images.max() >= cod.order):
        x = int(np.flatnonzero((images < 0) | (images >= cod.order))[0])
        raise AlgebraError(f"image of {x} is not an element of the codomain", (x,))
    pair = hom_violation(dom, cod, images)
    if pair is not None:
        x, y = pair
        raise NotHomomorphismError(f"f({x}*{y}) != f({x})*f({y})", pair)
    return Hom(dom, cod, images, name)


def identity_hom(g):
    """The identity map of ``g``."""
    return Hom(g, g, g.elements)


def trivial_hom(dom, cod):
    """The map sending everything to the identity."""
    return Hom(dom, cod, np.zeros(dom.order, dtype=np.intp))


class Action:
    """A left action of ``actor`` on ``target`` by automorphisms.

    ``table[g, m]`` is the index of ``^g m``.
    """

    def __init__(self, actor, target, table):
        self.actor = actor
        self.target = target
        self.table = np.ascontiguousarray(table, dtype=np.intp)

    def __call__(self, g, m):
        return int(self.table[g, m])

    def __repr__(self):
        return f"Action({self.actor!r} on {self.target!r})"

    def pullback(self, hom):
        """Return the action of ``hom.dom`` given by ``^x m = ^{hom(x)} m``."""
        return Action(hom.dom, self.target, self.table[hom.map])

    def is_trivial(self):
        return bool((self.table == self.target.elements).all())


def action_violations(actor, target, table):
    """List the ways ``table`` fails to be an action by automorphisms.

    Returns
    -------
    violations : `list` of `tuple`
        ``("automorphism", (g,))``, ``("identity", (0, m))`` or
        ``("composition", (g1, g2, m))`` entries.
    """
    found = []
    idx = target.elements
    for g in range(actor.order):
        row = table[g]
        if np.unique(row).size != target.order or hom_violation(target, target, row) is not None:
            found.append(("automorphism", (g,)))
    bad = np.flatnonzero(table[0] != idx)
    if bad.size:
        found.append(("identity", (0, int(bad[0]))))
    for g1 in range(actor.order):
        lhs = table[actor.mul[g1]]
        rhs = table[g1][table]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            g2, m = bad[0]
            found.append(("composition", (g1, int(g2), int(m))))
    return found


def make_action(actor, target, table):
    """Validate an action table and return an `Action`.

    Raises
    ------
    RowNotAutomorphismError
        Some row is not an automorphism of the target.
    NotActionError
        The identity acts nontrivially or ``^{g1 g2} m != ^{g1}(^{g2} m)``.
    """
    arr = np.asarray(table)
    if arr.shape != (actor.order, target.order):
        raise AlgebraError(f"action table must have shape {(actor.order, target.order)}, got {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise AlgebraError("action table entries must be integers")
    arr = arr.astype(np.intp)
    if arr.size and (arr.min() < 0 or arr.max() >= target.order):
        g, m = np.argwhere((arr < 0) | (arr >= target.order))[0]
        raise AlgebraError(f"entry [{g}][{m}] is not an element of the target", (g, m))
    for kind, witness in action_violations(actor, target, arr):
        if kind == "automorphism":
            raise RowNotAutomorphismError(f"element {witness[0]} does not act by an automorphism", witness)
        if kind == "identity":
            raise NotActionError(f"the identity moves {witness[1]}", witness)
        g1, g2, m = witness
        raise NotActionError(f"^({g1}*{g2}) {m} != ^{g1}(^{g2} {m})", witness)
    return Action(actor, target, arr)


def trivial_action(actor, target):
    """The action in which every element acts as the identity."""
    return Action(actor, target, np.tile(target.elements, (actor.order, 1)))


class Subgroup:
    """A subgroup of ``parent`` listed by its sorted element indices."""

    def __init__(self, parent, elements, name=""):
        self.parent = parent
        self.elements = np.unique(np.asarray(elements, dtype=np.intp))
        self.name = name

    def __len__(self):
        return self.order

    def __contains__(self, x):
        return bool(self.mask[x])

    def __repr__(self):
        return f"Subgroup(order={self.order} in {self.parent!r})"

    @property
    def order(self):
        return int(self.elements.size)

    @cached_property
    def mask(self):
        mask = np.zeros(self.parent.order, dtype=bool)
        mask[self.elements] = True
        return mask

    @cached_property
    def _position(self):
        pos = np.full(self.parent.order, -1, dtype=np.intp)
        pos[self.elements] = np.arange(self.order)
        return pos

    def index_of(self, x):
        """Return the index of parent element(s) ``x`` inside `as_group`."""
        pos = self._position[x]
        if np.any(pos < 0):
            missing = np.asarray(x)[np.asarray(pos) < 0].ravel()
            raise AlgebraError(f"element {int(missing[0])} is not in the subgroup", (missing[0],))
        return pos

    @cached_property
    def _embedding(self):
        el = self.elements
        group = Group(self._position[self.parent.mul[np.ix_(el, el)]], self.name)
        return group, Hom(group, self.parent, el)

    def as_group(self):
        return self._embedding[0]

    def inclusion(self):
        return self._embedding[1]

    def is_trivial(self):
        return self.order == 1

    def same_elements(self, other):
        return bool(np.array_equal(self.elements, other.elements))

    def normality_witness(self):
        """Return ``(g, x, g x g^-1)`` leaving the subgroup, or `None`."""
        conj = self.parent.conjugation_table[:, self.elements]
        bad = np.argwhere(~self.mask[conj])
        if bad.size:
            g, j = bad[0]
            return int(g), int(self.elements[j]), int(conj[g, j])
        return None

    def is_normal(self):
        return self.normality_witness() is None


def whole(g):
    """``g`` as a subgroup of itself."""
    return Subgroup(g, g.elements)


def trivial_subgroup(g):
    """The subgroup ``{1}`` of ``g``."""
    return Subgroup(g, [0])


def subgroup_generated(g, gens):
    """Return the smallest subgroup of ``g`` containing ``gens``."""
    gens = np.unique(np.asarray(list(gens) if not isinstance(gens, np.ndarray) else gens, dtype=np.intp))
    gens = gens[gens != 0]
    seen = np.zeros(g.order, dtype=bool)
    seen[0] = True
    frontier = np.array([0], dtype=np.intp)
    while frontier.size and gens.size:
        new = np.unique(g.mul[np.ix_(frontier, gens)])
        new = new[~seen[new]]
        seen[new] = True
        frontier = new
    return Subgroup(g, np.flatnonzero(seen))


def normal_closure(g, gens):
    """Return the smallest normal subgroup of ``g`` containing ``gens``."""
    gens = np.unique(np.asarray(list(gens) if not isinstance(gens, np.ndarray) else gens, dtype=np.intp))
    gens = gens[gens != 0]
    if not gens.size:
        return trivial_subgroup(g)
    conjugates = np.unique(g.conjugation_table[:, gens])
    return subgroup_generated(g, conjugates)


def quotient(g, n):
    """Return ``g / n`` and the canonical projection.

    The coset of 0 becomes the identity of the quotient.

    Raises
    ------
    NotNormalError
        With the witness ``(h, x, h x h^-1)``.
    """
    witness = n.normality_witness()
    if witness is not None:
        h, x, c = witness
        raise NotNormalError(f"{h}*{x}*{h}^-1 = {c} leaves the subgroup", witness)
    reps = g.mul[:, n.elements].min(axis=1)
    coset_reps, coset_of = np.unique(reps, return_inverse=True)
    coset_of = coset_of.reshape(-1).astype(np.intp)
    table = coset_of[g.mul[np.ix_(coset_reps, coset_reps)]]
    q = Group(table, f"{g.name}/{n.name}" if g.name and n.name else "")
    log.debug("quotient of order %d by subgroup of order %d", g.order, n.order)
    return q, Hom(g, q, coset_of)


def commutator_subgroup(g):
    """Return ``[g, g]``."""
    return subgroup_generated(g, np.unique(g.commutator_table))


def abelianization(g):
    """Return ``g / [g, g]`` and its projection."""
    return quotient(g, commutator_subgroup(g))


def kernel(h):
    """Return ``ker h`` as a subgroup of the domain."""
    return Subgroup(h.dom, np.flatnonzero(h.map == 0))


def image(h):
    """Return ``im h`` as a subgroup of the codomain."""
    return Subgroup(h.cod, np.unique(h.map))


def preimage(h, sub):
    """Return ``h^-1(sub)``."""
    return Subgroup(h.dom, np.flatnonzero(sub.mask[h.map]))


def intersect(a, b):
    """Intersect two subgroups of the same group."""
    if a.parent is not b.parent:
        raise AlgebraError("cannot intersect subgroups of different groups")
    return Subgroup(a.parent, np.intersect1d(a.elements, b.elements))


def restrict(h, dom_sub, cod_sub=None):
    """Restrict ``h`` to ``dom_sub`` (and corestrict to ``cod_sub``).

    The result maps between the ``as_group`` forms of the subgroups.
    """
    images = h.map[dom_sub.elements]
    if cod_sub is None:
        return Hom(dom_sub.as_group(), h.cod, images)
    return Hom(dom_sub.as_group(), cod_sub.as_group(), cod_sub.index_of(images))


def induced_hom(h, src, dst=None):
    """Return the map ``src.cod -> dst.cod`` induced by ``h``.

    ``src`` and ``dst`` are quotient projections; ``dst`` may be omitted
    when ``h`` already lands in the target group.

    Raises
    ------
    AlgebraError
        When ``h`` is not constant on the cosets of ``src``.
    """
    values = h.map if dst is None else dst.map[h.map]
    target = h.cod if dst is None else dst.cod
    images = np.zeros(src.cod.order, dtype=np.intp)
    images[src.map] = values
    bad = np.flatnonzero(images[src.map] != values)
    if bad.size:
        raise AlgebraError(f"map is not constant on the coset of {int(bad[0])}", (bad[0],))
    return Hom(src.cod, target, images)


def induced_action(act, proj):
    """Return the action of ``act.actor`` on ``proj.cod`` through ``proj``."""
    values = proj.map[act.table]
    table = np.zeros((act.actor.order, proj.cod.order), dtype=np.intp)
    table[:, proj.map] = values
    bad = np.argwhere(table[:, proj.map] != values)
    if bad.size:
        g, x = bad[0]
        raise AlgebraError(f"action of {g} does not preserve the coset of {x}", (g, x))
    return Action(act.actor, proj.cod, table)


def conjugation_action(actor, target):
    """Return the conjugation action of subgroup ``actor`` on ``target``."""
    if actor.parent is not target.parent:
        raise AlgebraError("conjugation needs subgroups of one group")
    parent = actor.parent
    conj = parent.conjugation_table[np.ix_(actor.elements, target.elements)]
    bad = np.argwhere(~target.mask[conj])
    if bad.size:
        i, j = bad[0]
        witness = (actor.elements[i], target.elements[j], conj[i, j])
        raise NotNormalError("conjugate leaves the target subgroup", witness)
    return Action(actor.as_group(), target.as_group(), target.index_of(conj))


class SemidirectProduct:
    """The group ``K x| A`` built from an action of ``A`` on ``K``.

    The pair ``(k, a)`` is stored at index ``k + |K| a``, so ``(0, 0)`` is the
    identity. The product is ``(k1, a1)(k2, a2) = (k1 ^{a1}k2, a1 a2)``.
    """

    def __init__(self, act, name=""):
        self.action = act
        self.kernel = act.target
        self.actor = act.actor
        nk, na = self.kernel.order, self.actor.order
        x = np.arange(nk * na, dtype=np.intp)
        k, a = x % nk, x // nk
        prod_k = self.kernel.mul[k[:, None], act.table[a[:, None], k[None, :]]]
        prod_a = self.actor.mul[a[:, None], a[None, :]]
        self.result = Group(prod_k + nk * prod_a, name)
        self.kernel_injection = Hom(self.kernel, self.result, np.arange(nk, dtype=np.intp))
        self.acting_injection = Hom(self.actor, self.result, nk * np.arange(na, dtype=np.intp))
        self.projection = Hom(self.result, self.actor, a)

    def pair(self, k, a):
        return np.asarray(k) + self.kernel.order * np.asarray(a)

    def unpair(self, x):
        x = np.asarray(x)
        return x % self.kernel.order, x // self.kernel.order


def semidirect(act, name=""):
    """Return the `SemidirectProduct` of an action."""
    return SemidirectProduct(act, name)


def direct_product(a, b, name=""):
    """Return ``a x b`` with ``(i, j)`` stored at ``i + |a| j``."""
    x = np.arange(a.order * b.order, dtype=np.intp)
    i, j = x % a.order, x // a.order
    mul = a.mul[i[:, None], i[None, :]] + a.order * b.mul[j[:, None], j[None, :]]
    return Group(mul, name or (f"{a.name}x{b.name}" if a.name and b.name else ""))


class TupleGroup:
    """A subgroup of a direct product, listed by coordinate tuples.

    ``coords[x]`` holds the factor indices of element ``x``. Rows are kept in
    lexicographic order, so the all-zero tuple is element 0.

    Parameters
    ----------
    factors : `list` of `Group`
        The factors of the ambient product.
    coords : array-like
        One row per element; must be closed under componentwise products.
    name : `str`, optional
        Label for the resulting group.
    """

    def __init__(self, factors, coords, name=""):
        self.factors = list(factors)
        k = len(self.factors)
        coords = np.asarray(coords, dtype=np.intp).reshape(-1, k)
        weights = np.ones(k, dtype=np.int64)
        for i in range(k - 2, -1, -1):
            weights[i] = weights[i + 1] * self.factors[i + 1].order
        self._weights = weights
        codes = coords.astype(np.int64) @ weights
        order = np.argsort(codes, kind="stable")
        self.coords = coords[order]
        self._codes = codes[order]
        if np.any(np.diff(self._codes) == 0):
            raise AlgebraError("coordinate tuples are not distinct")
        if self._codes.size == 0 or self._codes[0] != 0:
            raise AlgebraError("the identity tuple is missing")
        n = self.coords.shape[0]
        prod = np.zeros((n, n), dtype=np.int64)
        for i, factor in enumerate(self.factors):
            col = self.coords[:, i]
            prod += factor.mul[col[:, None], col[None, :]] * weights[i]
        self.group = Group(self._lookup(prod), name)
        log.debug("tuple group %s of order %d over %d factors", name or "?", n, k)

    @property
    def order(self):
        return self.group.order

    def _lookup(self, codes):
        pos = np.searchsorted(self._codes, codes)
        found = self._codes[np.minimum(pos, self._codes.size - 1)] == codes
        if not np.all(found):
            raise AlgebraError("coordinate tuples are not closed under multiplication")
        return pos.astype(np.intp)

    def index_of(self, coords):
        """Return the element indices of coordinate rows ``coords[..., k]``."""
        coords = np.asarray(coords, dtype=np.int64)
        return self._lookup(coords @ self._weights)


def product_subgroup(factors, coords, name=""):
    """Return the subgroup of a direct product on the rows ``coords``."""
    return TupleGroup(factors, coords, name)


def trivial():
    """The trivial group."""
    return Group([[0]], "1", builtin=("trivial", 1))


def cyclic(n):
    """The cyclic group of order ``n``; element ``k`` is ``k mod n``."""
    x = np.arange(n)
    return Group((x[:, None] + x[None, :]) % n, f"C{n}", builtin=("cyclic", n))


def dihedral(n):
    """Return the dihedral group of order ``2n``.

    ``r^k s^e`` is stored at ``k + n e``.
    """
    x = np.arange(2 * n)
    k, e = x % n, x // n
    sign = np.where(e == 0, 1, -1)
    rot = (k[:, None] + sign[:, None] * k[None, :]) % n
    ref = (e[:, None] + e[None, :]) % 2
    return Group(rot + n * ref, f"D{2 * n}", builtin=("dihedral", n))


def permutation_list(n):
    """Return the permutations of ``range(n)`` in `symmetric` order."""
    return list(itertools.permutations(range(n)))


def symmetric(n):
    """Return ``S_n`` on lexicographically ordered permutations.

    The product is composition, ``(s o t)(i) = s(t(i))``.
    """
    perms = np.array(permutation_list(n), dtype=np.intp).reshape(-1, n)
    count = perms.shape[0]
    composed = perms[np.arange(count)[:, None, None], perms[None, :, :]]
    base = n ** np.arange(n - 1, -1, -1)
    codes = perms @ base
    table = np.searchsorted(codes, composed @ base)
    return Group(table, f"S{n}", builtin=("symmetric", n))


def alternating(n):
    """The even permutations of ``n`` points."""
    perms = permutation_list(n)
    even = [i for i, p in enumerate(perms) if _parity(p) == 0]
    group = Subgroup(symmetric(n), even, f"A{n}").as_group()
    group.builtin = ("alternating", n)
    return group


def _parity(perm):
    inversions = sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return inversions % 2


def quaternion8():
    """Return Q8.

    Unit ``u`` in (1, i, j, k) with sign bit ``s`` is stored at ``u + 4 s``.
    """
    units = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ]
    table = np.zeros((8, 8), dtype=np.intp)
    for x, y in itertools.product(range(8), repeat=2):
        sign, unit = units[x % 4][y % 4]
        table[x, y] = unit + 4 * ((x // 4) ^ (y // 4) ^ sign)
    return Group(table, "Q8", builtin=("quaternion8", 8))


def klein4():
    """The Klein four-group ``C2 x C2``."""
    group = direct_product(cyclic(2), cyclic(2), "K4")
    group.builtin = ("klein4", 4)
    return group


BUILTINS = {
    "trivial": lambda n=1: trivial(),
    "cyclic": cyclic,
    "dihedral": dihedral,
    "symmetric": symmetric,
    "alternating": alternating,
    "quaternion8": lambda n=8: quaternion8(),
    "klein4": lambda n=4: klein4(),
}


def fingerprint(g):
    """Return isomorphism invariants of ``g``.

    These are the order, the abelian flag, the element order statistics and
    the order of the abelianization.
    """
    stats = tuple(sorted(Counter(g.element_orders.tolist()).items()))
    return g.order, g.is_abelian(), stats, abelianization(g)[0].order


def _generating_set(g):
    gens = []
    covered = trivial_subgroup(g).mask
    for x in np.argsort(-g.element_orders, kind="stable"):
        if not covered[x]:
            gens.append(int(x))
            covered = subgroup_generated(g, gens).mask
            if covered.all():
                break
    return gens


def _extend(a, b, gens, images):
    """Extend generator images to a homomorphism, or return `None`."""
    f = np.full(a.order, -1, dtype=np.intp)
    f[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for y in frontier:
            for g, img in zip(gens, images):
                z = a.mul[y, g]
                w = b.mul[f[y], img]
                if f[z] < 0:
                    f[z] = w
                    nxt.append(z)
                elif f[z] != w:
                    return None
        frontier = nxt
    assigned = f[f >= 0]
    if np.unique(assigned).size != assigned.size:
        return None
    return f


def _check_bound(groups, bound):
    bound = max_order() if bound is None else bound
    for g in groups:
        if g.order > bound:
            raise OrderTooLargeError(
                f"group {g.name or '?'} of order {g.order} exceeds the isomorphism bound {bound}", (g.order,)
            )


def find_isomorphism(a, b, max_order=None):
    """Search for an isomorphism ``a -> b``.

    Invariants are compared first; then generator images of matching
    element order are tried by backtracking.

    Returns
    -------
    iso : `Hom` or `None`
        An isomorphism, or `None` when the groups are not isomorphic.

    Raises
    ------
    OrderTooLargeError
        If either order exceeds the bound.
    """
    _check_bound((a, b), max_order)
    if fingerprint(a) != fingerprint(b):
        return None
    gens = _generating_set(a)
    candidates = [np.flatnonzero(b.element_orders == a.element_orders[x]) for x in gens]
    images = []

    def search(k):
        if k == len(gens):
            f = _extend(a, b, gens, images)
            if f is not None and (f >= 0).all() and hom_violation(a, b, f) is None:
                return f
            return None
        for c in candidates[k]:
            images.append(int(c))
            if _extend(a, b, gens[: k + 1], images) is not None:
                found = search(k + 1)
                if found is not None:
                    return found
            images.pop()
        return None

    f = search(0)
    return None if f is None else Hom(a, b, f)


def is_isomorphic(a, b, max_order=None):
    """Return whether ``a`` and ``b`` are isomorphic.

    Abelian groups are decided by their order statistics, which determine
    a finite abelian group; everything else goes through
    `find_isomorphism`.
    """
    _check_bound((a, b), max_order)
    if fingerprint(a) != fingerprint(b):
        return False
    if a.is_abelian():
        return True
    return find_isomorphism(a, b, max_order) is not None


def _invariant_factor_lists(n, smallest=2):
    if n == 1:
        yield ()
        return
    for d in range(smallest, n + 1):
        if n % d == 0:
            for rest in _invariant_factor_lists(n // d, d):
                if all(r % d == 0 for r in rest):
                    yield (d,) + rest


def describe_group(g):
    """Return a short structural name such as ``"C2xC2"``.

    Abelian groups of order at most 16 get their invariant factors; other
    groups get order, abelian flag and element order statistics.
    """
    if g.order == 1:
        return "1"
    stats = Counter(g.element_orders.tolist())
    abelian = g.is_abelian()
    if abelian and g.order <= 16:
        for factors in _invariant_factor_lists(g.order):
            model = cyclic(factors[0])
            for d in factors[1:]:
                model = direct_product(model, cyclic(d))
            if Counter(model.element_orders.tolist()) == stats:
                return "×".join(f"C{d}" for d in factors)
    kind = "abelian" if abelian else "nonabelian"
    orders = ", ".join(f"{k}:{v}" for k, v in sorted(stats.items()))
    return f"order {g.order}, {kind}, element orders {{{orders}}}"
