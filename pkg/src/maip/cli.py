"""Command-line front end.

Exit codes: 0 success, 1 property failure, 2 input error.

Subcommands:
  compute   polynomial of a diagram file
  resolve   signed resolution sum for a diagram with singular crossings
  tensor    side-by-side product of two diagram files
  compose   stack the first file above the second, with prediction check
  check     randomized property suites (moves, prop2, corollary,
            compose, vassiliev)
"""

from __future__ import annotations

import argparse
import json
import sys

from . import checks
from .algebra import collapse_variables, poly_to_json, render, substitute_symbols
from .diagram import from_json, parse, serialize, to_json
from .errors import (ArityMismatch, DiagramParseError, InconsistentPlan,
                     MissingSymbol, OrientationMismatch, SymbolicExponent,
                     ValidationFailure)
from .invariant import maip, structured_maip, vassiliev_eval
from .tangle_ops import GluePlan, compose, predict_composed, tensor


class _InputError(Exception):
    pass


def _load(path: str):
    """Read a diagram file, in either the text format or its JSON mirror."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _InputError(f"{path}: {exc.strerror or exc}") from exc
    try:
        if text.lstrip().startswith("{"):
            try:
                return from_json(json.loads(text))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise _InputError(f"{path}: bad diagram JSON: {exc}") from exc
        return parse(text)
    except DiagramParseError as exc:
        raise _InputError(f"{path}: {exc}") from exc
    except ValidationFailure as exc:
        lines = "\n".join(f"  - {v}" for v in exc.violations)
        raise _InputError(f"{path}: invalid diagram\n{lines}") from exc


def _parse_assignment(text: str, symbols) -> dict[int, int]:
    out: dict[int, int] = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        name, _, value = item.partition("=")
        name = name.strip()
        try:
            val = int(value)
        except ValueError:
            raise _InputError(f"bad assignment {item!r}; expected c<i>=<int> or all=<int>")
        if name == "all":
            for s in symbols:
                out.setdefault(s, val)
        elif name.startswith("c") and name[1:].isdigit():
            out[int(name[1:])] = val
        else:
            raise _InputError(f"bad assignment {item!r}; expected c<i>=<int> or all=<int>")
    return out


def cmd_compute(args) -> int:
    d = _load(args.file)
    if d.singular_ids():
        raise _InputError(f"{args.file}: diagram has singular crossings; use resolve")
    poly = maip(d)
    if args.numeric is not None:
        try:
            poly = substitute_symbols(poly, _parse_assignment(args.numeric, poly.symbols()))
        except MissingSymbol as exc:
            raise _InputError(f"--numeric incomplete: {exc}") from exc
    if args.collapse:
        try:
            poly = collapse_variables(poly)
        except SymbolicExponent as exc:
            raise _InputError(f"--collapse needs numeric labels first: {exc}") from exc
    print(json.dumps(poly_to_json(poly)) if args.json else render(poly))
    return 0


def cmd_resolve(args) -> int:
    d = _load(args.file)
    if not d.singular_ids():
        raise _InputError(f"{args.file}: no singular crossings; use compute")
    poly = vassiliev_eval(d)
    print(json.dumps(poly_to_json(poly)) if args.json else render(poly))
    return 0


def cmd_tensor(args) -> int:
    left = _load(args.left)
    right = _load(args.right)
    product = tensor(left, right)
    poly = None if product.singular_ids() else maip(product)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(serialize(product))
    if args.json:
        payload = {"diagram": to_json(product),
                   "maip": None if poly is None else poly_to_json(poly)}
        print(json.dumps(payload))
    else:
        sys.stdout.write(serialize(product))
        if poly is not None:
            print(f"# maip: {render(poly)}")
    return 0


def cmd_compose(args) -> int:
    upper = _load(args.upper)
    lower = _load(args.lower)
    try:
        composite = compose(upper, lower)
        plan = GluePlan.from_tangles(upper, lower)
    except (ArityMismatch, OrientationMismatch) as exc:
        raise _InputError(f"cannot compose: {exc}") from exc
    if composite.singular_ids():
        raise _InputError("composite has singular crossings; resolve the factors first")
    poly = maip(composite)
    try:
        predicted = predict_composed(structured_maip(upper), structured_maip(lower), plan)
        verdict = "ok" if predicted == poly else "MISMATCH"
    except InconsistentPlan:
        predicted, verdict = None, "skipped (cyclic gluing)"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(serialize(composite))
    if args.json:
        payload = {"diagram": to_json(composite), "maip": poly_to_json(poly),
                   "predict": verdict}
        print(json.dumps(payload))
    else:
        sys.stdout.write(serialize(composite))
        print(f"# maip: {render(poly)}")
        print(f"# predict: {verdict}")
    return 1 if verdict == "MISMATCH" else 0


def cmd_check(args) -> int:
    if args.what in ("compose", "vassiliev") and not args.random:
        raise _InputError(f"--what {args.what} runs on random inputs; pass --random")
    if not args.random and not args.file:
        raise _InputError("pass a diagram file or --random")
    diagram = _load(args.file) if args.file else None
    if diagram is not None and diagram.singular_ids():
        raise _InputError(f"{args.file}: diagram has singular crossings; use resolve")
    if args.what == "moves":
        report = checks.check_moves(args.trials, args.seed, start=diagram)
    elif args.what == "prop2":
        report = checks.check_prop2_suite(args.trials, args.seed, diagram=diagram)
    elif args.what == "corollary":
        report = checks.check_corollary_suite(args.trials, args.seed, diagram=diagram)
    elif args.what == "compose":
        report = checks.check_compose_suite(args.trials, args.seed)
    else:
        report = checks.check_vassiliev_suite(args.trials, args.seed)
    if args.json:
        print(json.dumps(report.to_json()))
    else:
        print(report.summary())
        for failure in report.failures:
            print(f"-- trial {failure['trial']} (seed {failure['seed']})")
            for key, value in failure.items():
                if key in ("trial", "seed"):
                    continue
                print(f"   {key}: {value}")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maip",
        description="Polynomial invariant of virtual tangle diagrams")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="polynomial of a diagram file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--numeric", metavar="ASSIGN",
                   help="substitute labels, e.g. 'c1=0,c2=3' or 'all=0'")
    p.add_argument("--collapse", action="store_true",
                   help="merge all variables into t1 (after --numeric)")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("resolve", help="resolve singular crossings and evaluate")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("tensor", help="place the second tangle to the right of the first")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--out", help="also write the product diagram to a file")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("compose", help="stack the first tangle above the second")
    p.add_argument("upper")
    p.add_argument("lower")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--out", help="also write the composite diagram to a file")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("check", help="run a randomized property suite")
    p.add_argument("file", nargs="?")
    p.add_argument("--what", required=True,
                   choices=["moves", "prop2", "corollary", "compose", "vassiliev"])
    p.add_argument("--random", action="store_true", help="generate random diagrams")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
