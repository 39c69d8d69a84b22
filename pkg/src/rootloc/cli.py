"""Command-line interface.

Subcommands::

    rootloc localize --coeffs P.json --epsilon 1e-3 [--mode adaptive|certified]
                     [--precision DIGITS] [--budget N] [--out result.json] [--svg regions.svg]
    rootloc bounds   --coeffs P.json
    rootloc check    --coeffs P.json

Coefficient files hold ``{"coefficients": [[re, im], ...]}`` with the
leading coefficient first.  Exit codes: 0 success, 2 not square-free,
3 malformed input, 4 evaluation budget exhausted (partial output is still
written), 5 internal certification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from .algebra import is_square_free
from .bounds import global_bounds
from .contours import CertificationError, ContourTouchesRoot
from .localizer import LocalizeConfig, NotSquareFree, localize
from .poly import Polynomial, deflate_zero_roots
from .winding import AmbiguousCrossing, ZeroOnContour

EXIT_OK = 0
EXIT_NOT_SQUARE_FREE = 2
EXIT_BAD_INPUT = 3
EXIT_BUDGET = 4
EXIT_INTERNAL = 5

ORDER = "leading-first"


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class RunRequest:
    coefficients: tuple
    epsilon: float
    mode: str = "adaptive"
    precision_digits: int | None = None
    budget: int | None = 10**9
    svg_path: str | None = None


# -- JSON output -----------------------------------------------------------


def _num(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        return "null"
    s = format(x, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with every real printed to 17 significant digits; key order kept."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return dumps(obj.item(), indent, _level)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


# -- input -------------------------------------------------------------------


def load_polynomial(path: str) -> Polynomial:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read coefficients: {exc}") from None
    coeffs = data.get("coefficients") if isinstance(data, dict) else None
    if not isinstance(coeffs, list) or not coeffs:
        raise InputError('expected {"coefficients": [[re, im], ...]}')
    pairs = []
    for c in coeffs:
        if isinstance(c, (int, float)) and not isinstance(c, bool):
            c = [c, 0]
        if (not isinstance(c, list) or len(c) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in c)):
            raise InputError(f"malformed coefficient {c!r}")
        pairs.append((c[0], c[1]))
    try:
        P = Polynomial.from_pairs(pairs)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if P.degree < 1:
        raise InputError("polynomial must have degree >= 1")
    return P


def _bounds_dict(P: Polynomial) -> dict | None:
    Q, _ = deflate_zero_roots(P)
    if Q.degree < 1:
        return None
    return global_bounds(Q).as_dict()


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


# -- subcommands -------------------------------------------------------------


def cmd_check(args) -> int:
    P = load_polynomial(args.coeffs)
    ok = P.degree < 2 or bool(is_square_free(P))
    _write(dumps({"square_free": ok, "order": ORDER}), args.out)
    return EXIT_OK if ok else EXIT_NOT_SQUARE_FREE


def cmd_bounds(args) -> int:
    P = load_polynomial(args.coeffs)
    _, zeros = deflate_zero_roots(P)
    _write(dumps({"bounds": _bounds_dict(P), "zero_roots": zeros, "order": ORDER}), args.out)
    return EXIT_OK


def cmd_localize(args) -> int:
    P = load_polynomial(args.coeffs)
    req = RunRequest(P.coeffs, args.epsilon, args.mode, args.precision, args.budget, args.svg)
    try:
        cfg = LocalizeConfig(epsilon=req.epsilon, mode=req.mode, precision_digits=req.precision_digits,
                             budget=req.budget)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    try:
        result = localize(P, cfg)
    except NotSquareFree:
        _write(dumps({"square_free": False, "bounds": None, "discs": [], "report": None,
                      "order": ORDER}), args.out)
        return EXIT_NOT_SQUARE_FREE

    bounds = result.bounds.as_dict() if result.bounds is not None else None
    discs = [{"center": [d.center.real, d.center.imag], "radius": d.radius,
              "count": d.count_certificate} for d in result.discs]
    report = result.report()
    report.update(eps_eff=result.eps_eff, annulus_splits=result.annulus_splits,
                  split_bound=result.split_bound)
    out = {"square_free": True, "bounds": bounds, "discs": discs, "report": report, "order": ORDER}
    _write(dumps(out), args.out)
    if req.svg_path:
        from .plotting import save_region_svg

        R0 = result.bounds.R0 if result.bounds is not None else 1.0
        save_region_svg(req.svg_path, result.regions, [(d.center, d.radius) for d in result.discs], R0)
    return EXIT_OK if result.complete else EXIT_BUDGET


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rootloc", description="Certified root localisation by winding numbers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--coeffs", required=True, help='JSON file {"coefficients": [[re, im], ...]}, leading first')
        p.add_argument("--out", help="write JSON here instead of stdout")

    p = sub.add_parser("localize", help="enclose every root in a disc of radius <= epsilon")
    common(p)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--mode", choices=("adaptive", "certified"), default="adaptive")
    p.add_argument("--precision", type=int, default=None, help="decimal digits; above 16 evaluates in mpmath")
    p.add_argument("--budget", type=int, default=10**9, help="maximum polynomial evaluations")
    p.add_argument("--svg", help="write a region/disc picture here")
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("bounds", help="root bounds and separation bound")
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("check", help="square-freeness gate only")
    common(p)
    p.set_defaults(func=cmd_check)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_BAD_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (CertificationError, ContourTouchesRoot, ZeroOnContour, AmbiguousCrossing) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
