"""Reading and writing structure files.

A structure file is YAML. Groups, homomorphisms, actions and bare tables
are declared by name and the ``structure`` section says which model they
form::

    groups:
      P: {builtin: symmetric, n: 3}
      M: {table: [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}
    homs:
      incl: {dom: M, cod: P, map: [0, 3, 4]}
    actions:
      conj: {actor: P, target: M, table: [[0, 1, 2], ...]}
    structure:
      kind: crossed_module
      boundary: incl
      act: conj

Actions may say ``trivial: true`` instead of giving a table. Everything is
validated on the way in; failures raise `ParseError` with the field path
and, when it can be found, the line.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import NamedTuple

import numpy as np
import yaml

from crossed import (
    Cat1Group,
    Cat2Group,
    CrossedModule,
    CrossedSquare,
    PreCrossedModule,
    QuadraticModule,
    TwoCrossedModule,
)
from groupcore import BUILTINS, make_action, make_group, make_hom, trivial_action
from simplicial import TruncatedBisimplicialGroup, TruncatedSimplicialGroup

log = logging.getLogger(__name__)

SECTIONS = ("groups", "homs", "actions", "tables")

ROLES = {
    "crossed_module": (("boundary", "homs"), ("act", "actions")),
    "cat1": (("group", "groups"), ("s", "homs"), ("t", "homs")),
    "cat2": (("group", "groups"), ("s1", "homs"), ("t1", "homs"), ("s2", "homs"), ("t2", "homs")),
    "crossed_square": (
        ("lam", "homs"),
        ("lamp", "homs"),
        ("mu", "homs"),
        ("nu", "homs"),
        ("act_l", "actions"),
        ("act_m", "actions"),
        ("act_n", "actions"),
        ("h", "tables"),
    ),
    "two_crossed": (
        ("d2", "homs"),
        ("d1", "homs"),
        ("act_m", "actions"),
        ("act_l", "actions"),
        ("lifting", "tables"),
    ),
    "quadratic": (
        ("delta", "homs"),
        ("boundary", "homs"),
        ("act_m", "actions"),
        ("act_l", "actions"),
        ("cproj", "homs"),
        ("omega", "tables"),
    ),
}
"""Fields of each fixed-shape kind and the section they point into."""

KINDS = tuple(ROLES) + ("simplicial", "bisimplicial")

_CLASSES = (
    (CrossedSquare, "crossed_square"),
    (TwoCrossedModule, "two_crossed"),
    (QuadraticModule, "quadratic"),
    (Cat2Group, "cat2"),
    (Cat1Group, "cat1"),
    (PreCrossedModule, "crossed_module"),
    (TruncatedBisimplicialGroup, "bisimplicial"),
    (TruncatedSimplicialGroup, "simplicial"),
)


class StructureFile(NamedTuple):
    """A parsed structure file: its kind and the model object it declares."""

    kind: str
    structure: object


class ParseError(ValueError):
    """A structure file could not be read.

    Parameters
    ----------
    message : `str`
        What went wrong.
    path : `tuple`, optional
        Keys leading to the offending field.
    line : `int`, optional
        1-based line in the file.
    """

    def __init__(self, message, path=(), line=None):
        self.path = tuple(path)
        self.line = line
        text = message
        if self.path:
            text = f"{'.'.join(str(p) for p in self.path)}: {text}"
        if line is not None:
            text = f"line {line}: {text}"
        super().__init__(text)


def kind_of(x):
    """Return the structure kind name of a model object."""
    for cls, kind in _CLASSES:
        if isinstance(x, cls):
            return kind
    raise TypeError(f"{type(x).__name__} is not a structure")


def _line_of(root, path):
    node = root
    for key in path:
        if isinstance(node, yaml.MappingNode):
            for k, v in node.value:
                if str(k.value) == str(key):
                    node = v
                    break
            else:
                break
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
            node = node.value[key]
        else:
            break
    return None if node is None else node.start_mark.line + 1


class _Reader:
    def __init__(self, data, root):
        self.data = data
        self.root = root
        self.cache = {section: {} for section in SECTIONS}

    def fail(self, message, *path):
        return ParseError(message, path, _line_of(self.root, path))

    def section(self, name):
        value = self.data.get(name) or {}
        if not isinstance(value, dict):
            raise self.fail(f"section {name!r} must be a mapping", name)
        return value

    def entry(self, section, name, path):
        if not isinstance(name, str):
            raise self.fail(f"expected the name of an entry in {section!r}", *path)
        spec = self.section(section).get(name)
        if spec is None:
            raise self.fail(f"unknown {section[:-1]} {name!r}", *path)
        return spec

    def group(self, name, path):
        if name in self.cache["groups"]:
            return self.cache["groups"][name]
        spec = self.entry("groups", name, path)
        where = ("groups", name)
        if not isinstance(spec, dict):
            raise self.fail("group must be a mapping", *where)
        try:
            if "builtin" in spec:
                kind = spec["builtin"]
                if kind not in BUILTINS:
                    raise self.fail(f"unknown builtin group {kind!r}", *where, "builtin")
                g = BUILTINS[kind](spec["n"]) if "n" in spec else BUILTINS[kind]()
            elif "table" in spec:
                g = make_group(spec["table"], name)
                rows = np.asarray(spec["table"]) == np.arange(g.order)
                identity = int(np.flatnonzero(rows.all(axis=1))[0])
                if identity != 0:
                    raise self.fail(f"identity must be element 0, found at index {identity}", *where, "table")
            else:
                raise self.fail("group needs 'builtin' or 'table'", *where)
        except (ValueError, TypeError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise self.fail(str(exc), *where) from exc
        g.name = name
        self.cache["groups"][name] = g
        return g

    def hom(self, name, path):
        if name in self.cache["homs"]:
            return self.cache["homs"][name]
        spec = self.entry("homs", name, path)
        where = ("homs", name)
        if not isinstance(spec, dict) or not {"dom", "cod", "map"} <= set(spec):
            raise self.fail("hom needs 'dom', 'cod' and 'map'", *where)
        dom = self.group(spec["dom"], where + ("dom",))
        cod = self.group(spec["cod"], where + ("cod",))
        try:
            h = make_hom(dom, cod, spec["map"], name)
        except (ValueError, TypeError) as exc:
            raise self.fail(str(exc), *where, "map") from exc
        self.cache["homs"][name] = h
        return h

    def action(self, name, path):
        if name in self.cache["actions"]:
            return self.cache["actions"][name]
        spec = self.entry("actions", name, path)
        where = ("actions", name)
        if not isinstance(spec, dict) or not {"actor", "target"} <= set(spec):
            raise self.fail("action needs 'actor' and 'target'", *where)
        actor = self.group(spec["actor"], where + ("actor",))
        target = self.group(spec["target"], where + ("target",))
        if spec.get("trivial"):
            act = trivial_action(actor, target)
        elif "table" in spec:
            try:
                act = make_action(actor, target, spec["table"])
            except (ValueError, TypeError) as exc:
                raise self.fail(str(exc), *where, "table") from exc
        else:
            raise self.fail("action needs 'table' or 'trivial: true'", *where)
        self.cache["actions"][name] = act
        return act

    def table(self, name, path, shape, bound):
        spec = self.entry("tables", name, path)
        where = ("tables", name)
        try:
            arr = np.asarray(spec)
        except ValueError as exc:
            raise self.fail(str(exc), *where) from exc
        if arr.shape != shape:
            raise self.fail(f"table must have shape {shape}, got {arr.shape}", *where)
        if not np.issubdtype(arr.dtype, np.integer):
            raise self.fail("table entries must be integers", *where)
        if arr.size and (arr.min() < 0 or arr.max() >= bound):
            raise self.fail(f"table entries must lie below {bound}", *where)
        return arr.astype(np.intp)

    def expect(self, condition, message, *path):
        if not condition:
            raise self.fail(message, "structure", *path)

    def structure(self):
        s = self.data.get("structure")
        if not isinstance(s, dict) or "kind" not in s:
            raise self.fail("missing 'structure' mapping with a 'kind'", "structure")
        kind = s["kind"]
        if kind not in KINDS:
            raise self.fail(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", "structure", "kind")
        builder = getattr(self, f"_build_{kind}")
        result = builder(s)
        log.debug("parsed %s structure", kind)
        return StructureFile(kind, result)

    def refs(self, s, kind, skip=()):
        out = {}
        for field, section in ROLES[kind]:
            if field in skip:
                continue
            if field not in s:
                raise self.fail(f"missing field {field!r}", "structure")
            path = ("structure", field)
            out[field] = getattr(self, section[:-1])(s[field], path)
        return out

    def _build_crossed_module(self, s):
        r = self.refs(s, "crossed_module")
        bd, act = r["boundary"], r["act"]
        ok = act.actor is bd.cod and act.target is bd.dom
        self.expect(ok, "action must be of the codomain on the domain", "act")
        return CrossedModule(bd, act)

    def _build_cat1(self, s):
        r = self.refs(s, "cat1")
        g = r["group"]
        for f in ("s", "t"):
            self.expect(r[f].dom is g and r[f].cod is g, "must be an endomorphism of 'group'", f)
        return Cat1Group(g, r["s"], r["t"])

    def _build_cat2(self, s):
        r = self.refs(s, "cat2")
        g = r["group"]
        for f in ("s1", "t1", "s2", "t2"):
            self.expect(r[f].dom is g and r[f].cod is g, "must be an endomorphism of 'group'", f)
        return Cat2Group(g, r["s1"], r["t1"], r["s2"], r["t2"])

    def _build_crossed_square(self, s):
        r = self.refs(s, "crossed_square", skip=("h",))
        lam, lamp, mu, nu = r["lam"], r["lamp"], r["mu"], r["nu"]
        L, M, N, P = lam.dom, mu.dom, nu.dom, mu.cod
        self.expect(lamp.dom is L, "must start at the domain of 'lam'", "lamp")
        self.expect(lam.cod is M, "must end at the domain of 'mu'", "lam")
        self.expect(lamp.cod is N, "must end at the domain of 'nu'", "lamp")
        self.expect(nu.cod is P, "must end at the codomain of 'mu'", "nu")
        for f, target in (("act_l", L), ("act_m", M), ("act_n", N)):
            self.expect(r[f].actor is P and r[f].target is target, "wrong actor or target", f)
        h = self.table(s.get("h"), ("structure", "h"), (M.order, N.order), L.order)
        return CrossedSquare(lam, lamp, mu, nu, r["act_l"], r["act_m"], r["act_n"], h)

    def _build_two_crossed(self, s):
        r = self.refs(s, "two_crossed", skip=("lifting",))
        d2, d1 = r["d2"], r["d1"]
        self.expect(d2.cod is d1.dom, "must end at the domain of 'd1'", "d2")
        for f, target in (("act_m", d1.dom), ("act_l", d2.dom)):
            self.expect(r[f].actor is d1.cod and r[f].target is target, "wrong actor or target", f)
        lifting = self.table(s.get("lifting"), ("structure", "lifting"), (d1.dom.order,) * 2, d2.dom.order)
        return TwoCrossedModule(d2, d1, r["act_m"], r["act_l"], lifting)

    def _build_quadratic(self, s):
        r = self.refs(s, "quadratic", skip=("omega",))
        delta, bd, cproj = r["delta"], r["boundary"], r["cproj"]
        self.expect(delta.cod is bd.dom, "must end at the domain of 'boundary'", "delta")
        self.expect(cproj.dom is bd.dom, "must start at the domain of 'boundary'", "cproj")
        for f, target in (("act_m", bd.dom), ("act_l", delta.dom)):
            self.expect(r[f].actor is bd.cod and r[f].target is target, "wrong actor or target", f)
        c = cproj.cod.order
        omega = self.table(s.get("omega"), ("structure", "omega"), (c, c), delta.dom.order)
        return QuadraticModule(delta, bd, r["act_m"], r["act_l"], cproj, omega)

    def _hom_lists(self, s, field):
        value = s.get(field)
        if not isinstance(value, list):
            raise self.fail(f"{field!r} must be a list of lists", "structure", field)
        out = []
        for n, row in enumerate(value):
            if not isinstance(row, list):
                raise self.fail("expected a list of hom names", "structure", field, n)
            out.append([self.hom(name, ("structure", field, n, i)) for i, name in enumerate(row)])
        return out

    def _build_simplicial(self, s):
        names = s.get("levels")
        if not isinstance(names, list) or not names:
            raise self.fail("'levels' must be a non-empty list of group names", "structure", "levels")
        levels = [self.group(name, ("structure", "levels", n)) for n, name in enumerate(names)]
        faces = self._hom_lists(s, "faces")
        degens = self._hom_lists(s, "degeneracies")
        return TruncatedSimplicialGroup(levels, faces, degens, s.get("name", ""))

    def _cell_map(self, s, field, convert):
        value = s.get(field)
        if not isinstance(value, dict):
            raise self.fail(f"{field!r} must map 'p,q' keys", "structure", field)
        out = {}
        for key, item in value.items():
            try:
                p, q = (int(part) for part in str(key).split(","))
            except ValueError as exc:
                raise self.fail(f"bad cell key {key!r}", "structure", field, key) from exc
            out[(p, q)] = convert(item, ("structure", field, key))
        return out

    def _build_bisimplicial(self, s):
        cells = self._cell_map(s, "cells", self.group)

        def homs(items, path):
            return [self.hom(name, path + (i,)) for i, name in enumerate(items or [])]

        maps = {f: self._cell_map(s, f, homs) for f in ("hfaces", "vfaces", "hdegens", "vdegens")}
        depth = max(p + q for p, q in cells)
        return TruncatedBisimplicialGroup(
            depth,
            {key: _Cell(g) for key, g in cells.items()},
            [],
            maps["hfaces"],
            maps["vfaces"],
            maps["hdegens"],
            maps["vdegens"],
        )


class _Cell:
    """Stands in for a `TupleGroup` in a bisimplicial group read from file."""

    def __init__(self, group):
        self.group = group
        self.order = group.order


def parse(text):
    """Parse structure file text.

    Returns
    -------
    parsed : `StructureFile`
        The kind, one of `KINDS`, and the model object.

    Raises
    ------
    ParseError
        On malformed YAML, missing or inconsistent fields, or tables that
        fail validation.
    """
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        problem = getattr(exc, "problem", None) or str(exc)
        raise ParseError(f"invalid YAML: {problem}", line=None if mark is None else mark.line + 1) from exc
    if data is None:
        raise ParseError("empty structure file")
    if not isinstance(data, dict):
        raise ParseError("structure file must be a mapping", line=1)
    return _Reader(data, root).structure()


def load(path):
    """Read and parse the structure file at ``path``."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse(text)


class _Writer:
    def __init__(self):
        self.out = {section: {} for section in SECTIONS}
        self.names = {}

    def _name(self, obj, hint, section):
        key = (section, id(obj))
        if key in self.names:
            return self.names[key], False
        base = hint or section[:-1]
        name = base
        counter = 2
        while name in self.out[section]:
            name = f"{base}_{counter}"
            counter += 1
        self.names[key] = name
        return name, True

    def group(self, g, hint=""):
        name, new = self._name(g, g.name or hint, "groups")
        if new:
            if g.builtin is not None:
                kind, n = g.builtin
                self.out["groups"][name] = {"builtin": kind, "n": int(n)}
            else:
                self.out["groups"][name] = {"table": g.mul.tolist()}
        return name

    def hom(self, h, hint):
        name, new = self._name(h, hint, "homs")
        if new:
            self.out["homs"][name] = {
                "dom": self.group(h.dom, f"{hint}_dom"),
                "cod": self.group(h.cod, f"{hint}_cod"),
                "map": h.map.tolist(),
            }
        return name

    def action(self, act, hint):
        name, new = self._name(act, hint, "actions")
        if new:
            entry = {"actor": self.group(act.actor), "target": self.group(act.target)}
            if act.is_trivial():
                entry["trivial"] = True
            else:
                entry["table"] = act.table.tolist()
            self.out["actions"][name] = entry
        return name

    def table(self, arr, hint):
        name, _ = self._name(arr, hint, "tables")
        self.out["tables"][name] = np.asarray(arr).tolist()
        return name


def to_data(x):
    """Return the YAML-ready mapping for a model object."""
    kind = kind_of(x)
    w = _Writer()
    structure = {"kind": kind}
    if kind in ROLES:
        for field, section in ROLES[kind]:
            structure[field] = getattr(w, section[:-1])(getattr(x, field), field)
    elif kind == "simplicial":
        structure["levels"] = [w.group(g, f"G{n}") for n, g in enumerate(x.levels)]
        structure["faces"] = [
            [w.hom(d, f"d{n}_{i}") for i, d in enumerate(row)] for n, row in enumerate(x.faces)
        ]
        structure["degeneracies"] = [
            [w.hom(s, f"s{n}_{j}") for j, s in enumerate(row)] for n, row in enumerate(x.degeneracies)
        ]
    else:
        keys = sorted(x.cells)
        structure["cells"] = {f"{p},{q}": w.group(x.group(p, q), f"G{p}_{q}") for p, q in keys}
        for field, prefix in (("hfaces", "dh"), ("vfaces", "dv"), ("hdegens", "sh"), ("vdegens", "sv")):
            maps = getattr(x, field)
            structure[field] = {
                f"{p},{q}": [w.hom(h, f"{prefix}{p}_{q}_{i}") for i, h in enumerate(maps[(p, q)])]
                for p, q in keys
            }
    data = {section: entries for section, entries in w.out.items() if entries}
    data["structure"] = structure
    return data


def dumps(x):
    """Return ``x`` as structure file text."""
    return yaml.dump(to_data(x), sort_keys=False, default_flow_style=None, width=110)


def dump(x, path):
    """Write ``x`` to ``path`` as a structure file."""
    Path(path).write_text(dumps(x))
    log.info("wrote %s structure to %s", kind_of(x), path)


def same_structure(a, b):
    """Return whether two models have the same kind and tables.

    Names are ignored.
    """
    da, db = to_data(a), to_data(b)
    return _strip_names(da) == _strip_names(db)


def _strip_names(data):
    """Replace names by their contents so that renamed copies compare equal."""
    sections = {s: data.get(s, {}) for s in SECTIONS}

    def resolve(section, name):
        entry = sections[section][name]
        if section == "groups":
            return ("group", str(entry))
        if section == "homs":
            dom, cod = resolve("groups", entry["dom"]), resolve("groups", entry["cod"])
            return ("hom", dom, cod, str(entry["map"]))
        if section == "actions":
            body = "trivial" if entry.get("trivial") else str(entry["table"])
            return ("action", resolve("groups", entry["actor"]), resolve("groups", entry["target"]), body)
        return ("table", str(entry))

    def walk(value, section):
        if isinstance(value, list):
            return [walk(v, section) for v in value]
        if isinstance(value, dict):
            return {k: walk(v, section) for k, v in value.items()}
        return resolve(section, value)

    out = {}
    structure = data["structure"]
    kind = structure["kind"]
    sections_of = dict(ROLES.get(kind, ()))
    for field, value in structure.items():
        if field == "kind" or field == "name":
            out[field] = value
        elif field in ("levels", "cells"):
            out[field] = walk(value, "groups")
        elif field in sections_of:
            out[field] = walk(value, sections_of[field])
        else:
            out[field] = walk(value, "homs")
    return out
