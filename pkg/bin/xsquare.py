#!/usr/bin/env python
"""Check, convert and compute homotopy groups of finite models of 3-types.

Structure files are YAML (see ``structfile.py``). Subcommands::

    check FILE                      validate all axioms of the structure
    convert --to KIND --out PATH FILE
    homotopy FILE                   print pi1, pi2, pi3
    diagram FILE                    run every route to the homotopy groups
                                    and compare them
    demo NAME [--out PATH]          write a built-in example
    demo --list

Exit status is 0 on success, 1 when an axiom, a conversion or a comparison
fails and 2 when the input cannot be read or does not fit the command.
"""

import argparse
import logging
import sys

from corpus import DEMOS, UnknownDemoError, load_demo
from crossed import (
    cat1_from_crossed_module,
    cat2_from_crossed_square,
    check_cat1,
    check_cat2,
    check_crossed_module,
    check_crossed_square,
    check_quadratic,
    check_two_crossed,
    crossed_module_from_cat1,
    crossed_square_from_cat2,
)
from functors import (
    HypothesisG3NotDegenerateError,
    compare_two_crossed,
    quadratic_from_simplicial,
    quadratic_from_square,
    quadratic_from_two_crossed,
    square_from_simplicial,
    two_crossed_from_crossed_module,
    two_crossed_from_simplicial,
    two_crossed_from_square,
    two_crossed_from_square_via_codiagonal,
)
from groupcore import AlgebraError, max_order, set_max_order
from homotopy import (
    compare_simplicial_routes,
    homotopy,
    homotopy_quadratic,
    homotopy_simplicial,
    homotopy_square,
    homotopy_two_crossed,
    signatures_isomorphic,
)
from simplicial import binerve, check_bisimplicial, check_simplicial, codiagonal, nerve_cat1
from structfile import KINDS, ParseError, dump, dumps, load

log = logging.getLogger("xsquare")

CHECKERS = {
    "crossed_module": check_crossed_module,
    "cat1": check_cat1,
    "cat2": check_cat2,
    "crossed_square": check_crossed_square,
    "two_crossed": check_two_crossed,
    "quadratic": check_quadratic,
    "simplicial": check_simplicial,
    "bisimplicial": check_bisimplicial,
}

NERVE_DEPTH = 3
"""Depth of the nerve written when converting to a simplicial group."""


def _codiagonal_of_cat2(k):
    return codiagonal(binerve(k))


CONVERSIONS = {
    ("crossed_module", "cat1"): cat1_from_crossed_module,
    ("crossed_module", "two_crossed"): two_crossed_from_crossed_module,
    ("crossed_module", "simplicial"): lambda c: nerve_cat1(c, NERVE_DEPTH),
    ("cat1", "crossed_module"): crossed_module_from_cat1,
    ("cat1", "simplicial"): lambda k: nerve_cat1(k, NERVE_DEPTH),
    ("crossed_square", "cat2"): cat2_from_crossed_square,
    ("crossed_square", "two_crossed"): two_crossed_from_square,
    ("crossed_square", "quadratic"): quadratic_from_square,
    ("crossed_square", "bisimplicial"): lambda s: binerve(cat2_from_crossed_square(s)),
    ("crossed_square", "simplicial"): lambda s: _codiagonal_of_cat2(cat2_from_crossed_square(s)),
    ("cat2", "crossed_square"): crossed_square_from_cat2,
    ("cat2", "bisimplicial"): binerve,
    ("cat2", "simplicial"): _codiagonal_of_cat2,
    ("two_crossed", "quadratic"): quadratic_from_two_crossed,
    ("simplicial", "crossed_square"): square_from_simplicial,
    ("simplicial", "two_crossed"): two_crossed_from_simplicial,
    ("simplicial", "quadratic"): quadratic_from_simplicial,
    ("bisimplicial", "simplicial"): codiagonal,
}
"""``(from, to)`` kind pairs and the function doing the conversion."""


class UsageError(ValueError):
    """The request cannot be served for this kind of input."""


class UnsupportedConversionError(ValueError):
    """No conversion between the two kinds is available."""


class CheckFailed(Exception):
    """The input structure does not satisfy its axioms."""


def load_checked(path, verbose=False):
    """Load a structure file and refuse it unless every axiom holds."""
    kind, x = load(path)
    report = CHECKERS[kind](x)
    if not report.ok:
        print(f"{path}: {kind} fails its axioms", file=sys.stderr)
        print(report.format(verbose), file=sys.stderr)
        raise CheckFailed(kind)
    return kind, x


def signature_of(kind, x):
    """Return the homotopy signature of any supported structure."""
    if kind == "crossed_module":
        return homotopy_two_crossed(two_crossed_from_crossed_module(x))
    if kind == "cat1":
        return homotopy_two_crossed(two_crossed_from_crossed_module(crossed_module_from_cat1(x)))
    if kind == "cat2":
        return homotopy_square(crossed_square_from_cat2(x))
    if kind == "bisimplicial":
        return homotopy_simplicial(codiagonal(x))
    return homotopy(x)


def cmd_check(args):
    """Print the axiom report of a structure file."""
    kind, x = load(args.file)
    report = CHECKERS[kind](x)
    print(f"{kind}: {report.format(args.verbose)}")
    return 0 if report.ok else 1


def cmd_convert(args):
    """Convert a checked structure and write it once the result checks."""
    kind, x = load_checked(args.file, args.verbose)
    if kind == args.to:
        result = x
    else:
        try:
            convert = CONVERSIONS[(kind, args.to)]
        except KeyError:
            targets = sorted(to for src, to in CONVERSIONS if src == kind)
            supported = ", ".join(targets)
            message = f"cannot convert {kind} to {args.to}; supported: {supported}"
            raise UnsupportedConversionError(message) from None
        result = convert(x)
    report = CHECKERS[args.to](result)
    if not report.ok:
        print(f"converted {args.to} fails its axioms", file=sys.stderr)
        print(report.format(args.verbose), file=sys.stderr)
        return 1
    dump(result, args.out)
    print(f"wrote {args.to} to {args.out}")
    return 0


def cmd_homotopy(args):
    """Print pi1, pi2 and pi3 of a checked structure."""
    kind, x = load_checked(args.file, args.verbose)
    print(signature_of(kind, x).format())
    return 0


def _square_routes(s):
    """Return ``(label, signature)`` routes and problems for a square."""
    problems = []
    cone = two_crossed_from_square(s)
    via_codiagonal = two_crossed_from_square_via_codiagonal(s)
    quadratic = quadratic_from_square(s)
    for label, report in (
        ("mapping cone", check_two_crossed(cone)),
        ("codiagonal", check_two_crossed(via_codiagonal)),
        ("quadratic", check_quadratic(quadratic)),
    ):
        if not report.ok:
            problems.append(f"{label} output fails: {report.format()}")
    differ = compare_two_crossed(cone, via_codiagonal)
    if differ:
        problems.append(f"mapping cone and codiagonal differ in {', '.join(differ)}")
    routes = [
        ("crossed square", homotopy_square(s)),
        ("mapping cone", homotopy_two_crossed(cone)),
        ("codiagonal", homotopy_two_crossed(via_codiagonal)),
        ("quadratic", homotopy_quadratic(quadratic)),
    ]
    return routes, problems


def _simplicial_routes(g):
    problems = []
    direct, via_square, _ = compare_simplicial_routes(g)
    routes = [("simplicial", homotopy_simplicial(g)), ("2-crossed", direct), ("crossed square", via_square)]
    try:
        routes.append(("quadratic", homotopy_quadratic(quadratic_from_simplicial(g))))
    except HypothesisG3NotDegenerateError as exc:
        log.info("skipping the quadratic route: %s", exc)
    for label, report in (
        ("2-crossed", check_two_crossed(two_crossed_from_simplicial(g))),
        ("crossed square", check_crossed_square(square_from_simplicial(g))),
    ):
        if not report.ok:
            problems.append(f"{label} output fails: {report.format()}")
    return routes, problems


def cmd_diagram(args):
    """Run every route to the homotopy groups and compare them."""
    kind, x = load_checked(args.file, args.verbose)
    if kind == "cat2":
        kind, x = "crossed_square", crossed_square_from_cat2(x)
    if kind == "crossed_square":
        routes, problems = _square_routes(x)
    elif kind == "simplicial":
        routes, problems = _simplicial_routes(x)
    else:
        raise UsageError(f"diagram needs a crossed square, cat2-group or simplicial group, not {kind}")
    _, first = routes[0]
    for label, signature in routes:
        agree = signatures_isomorphic(first, signature)
        mark = "ok" if agree else "DIFFERS"
        groups = ", ".join(f"{g.order}" for g in signature.groups())
        print(f"{label:>16}: orders ({groups}) {mark}")
        if args.verbose:
            print(signature.format())
        if not agree:
            problems.append(f"{label} signature differs from {routes[0][0]}")
    for problem in problems:
        print(problem)
    print("diagram commutes" if not problems else "diagram does not commute")
    return 0 if not problems else 1


def cmd_demo(args):
    """Write or list the built-in examples."""
    if args.list:
        for name, (description, _) in DEMOS.items():
            print(f"{name:<24} {description}")
        return 0
    if args.name is None:
        raise UsageError("demo needs a NAME or --list")
    x = load_demo(args.name)
    if args.out:
        dump(x, args.out)
        print(f"wrote {args.name} to {args.out}")
    else:
        sys.stdout.write(dumps(x))
    return 0


def build_parser():
    """Return the argument parser for all subcommands."""
    formatter = argparse.RawDescriptionHelpFormatter
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=formatter)
    parser.add_argument("-v", "--verbose", action="store_true", help="Print every witness and debug logging.")
    parser.add_argument(
        "--max-order",
        type=int,
        default=None,
        help="""Largest group order the isomorphism search accepts
                (default: $XSQUARE_MAX_ORDER or 64).""",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="Validate a structure file.")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("convert", help="Convert a structure to another model.")
    p.add_argument("file")
    p.add_argument("--to", required=True, choices=KINDS, help="Kind to convert to.")
    p.add_argument("--out", required=True, help="Structure file to write.")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("homotopy", help="Print the homotopy groups.")
    p.add_argument("file")
    p.set_defaults(func=cmd_homotopy)

    p = sub.add_parser("diagram", help="Compare every route to the homotopy groups.")
    p.add_argument("file")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("demo", help="Write a built-in example structure.")
    p.add_argument("name", nargs="?", help="Demo name; see --list.")
    p.add_argument("--out", help="File to write; standard output if omitted.")
    p.add_argument("--list", action="store_true", help="List the demos.")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None):
    """Run the command line and return the exit status."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.max_order is not None:
        set_max_order(args.max_order)
    log.debug("isomorphism bound %d", max_order())
    try:
        return args.func(args)
    except CheckFailed:
        return 1
    except (ParseError, UnknownDemoError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnsupportedConversionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.witness:
            print(f"witness: {exc.witness}", file=sys.stderr)
        return 1
    finally:
        if args.max_order is not None:
            set_max_order(None)


if __name__ == "__main__":
    sys.exit(main())
