"""Command-line front end.

Exit status taxonomy:
  0  success
  2  input could not be parsed (map, point, flags)
  3  a budget was exhausted (orbit undecided, factorization or size refusal)
  4  a verification suite found a counterexample (printed with its witness)
  5  an internal invariant was breached

JSON documents are built with fixed key order and stringified integers, so
identical inputs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds as _bounds
from .maps import BitBudgetError, MapSyntaxError, RationalMap, bad_primes, parse_map
from .numtheory import FactorizationBudgetError, PlaceSet, factor, is_prime
from .orbits import (
    CertificateCheckError,
    OrbitCertificate,
    UndecidedOrbit,
    certificate_to_json,
    detect_orbit,
)
from .projective import ProjectivePoint, log_distance, parse_point
from .sunit import EnumerationCapError, count_three_term, solve_unit_equation
from .suites import SUITE_NAMES, run_suite

__all__ = ["main"]

SCHEMA_TAG = "orbita/1"


class _InputError(Exception):
    """User-supplied value failed to parse; reported as exit status 2."""


def _fail(message: str) -> None:
    print(f"orbita: error: {message}", file=sys.stderr)


def _parse_map_arg(text: str) -> RationalMap:
    try:
        return parse_map(text)
    except MapSyntaxError as exc:
        raise _InputError(f"bad map {text!r}: {exc}") from None
    except ValueError as exc:
        raise _InputError(f"bad map {text!r}: {exc}") from None


def _parse_point_arg(text: str) -> ProjectivePoint:
    try:
        return parse_point(text)
    except ValueError as exc:
        raise _InputError(str(exc)) from None


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


# ---------------------------------------------------------------- orbit


def _factorization_str(n: int) -> str:
    f = factor(n)
    if not f.factors:
        return str(n)
    parts = [] if f.sign == 1 else ["-1"]
    for p, e in f.factors:
        parts.append(f"{p}^{e}" if e > 1 else str(p))
    return f"{n} = " + " * ".join(parts)


def _primes_str(primes) -> str:
    return " ".join(str(p) for p in primes) if primes else "(none)"


def _cmd_orbit(args) -> int:
    m = _parse_map_arg(args.map)
    start = _parse_point_arg(args.point)
    if args.max_steps < 1 or args.max_bits < 1:
        raise _InputError("budgets must be positive")
    result = detect_orbit(m, start, args.max_steps, args.max_bits)
    if isinstance(result, UndecidedOrbit):
        _fail(f"orbit undecided: {result.reason} after {result.steps} steps")
        return 3
    doc = certificate_to_json(result)
    if args.json:
        doc = {"command": "orbit", **doc}
        _emit(doc)
        return 0
    print(f"map: {m}")
    print(f"start: {start}")
    print(
        f"tail length m = {result.tail_length}, period n = {result.period}, "
        f"orbit length {result.length}"
    )
    print("points: " + " -> ".join(str(P) for P in result.points))
    print(f"bad primes: {_primes_str(result.bad_primes)}; s = {result.s}")
    checks = doc["checks"]
    print("checks: " + " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in checks.items()))
    print(f"total-length bound, ln: {doc['bounds']['ln_c_s']}")
    print(f"period bound (t={len(result.bad_primes)}), ln: {doc['bounds']['ln_ms']}")
    print(f"bounds satisfied: {'yes' if doc['bounds']['satisfied'] else 'NO'}")
    return 0


# ---------------------------------------------------------------- delta


def _cmd_delta(args) -> int:
    P = _parse_point_arg(args.a)
    Q = _parse_point_arg(args.b)
    if args.p < 2 or not is_prime(args.p):
        raise _InputError(f"{args.p} is not prime")
    d = log_distance(P, Q, args.p)
    print("inf" if d == float("inf") else int(d))
    return 0


# ---------------------------------------------------------------- badprimes


def _cmd_badprimes(args) -> int:
    m = _parse_map_arg(args.map)
    primes = bad_primes(m)
    if args.json:
        f = factor(m.res)
        _emit(
            {
                "command": "badprimes",
                "map": str(m),
                "resultant": str(m.res),
                "factorization": [[str(p), str(e)] for p, e in f.factors],
                "bad_primes": [str(p) for p in primes],
            }
        )
        return 0
    print(f"map: {m}")
    print(f"resultant: {_factorization_str(m.res)}")
    print(f"bad primes: {_primes_str(primes)}")
    return 0


# ---------------------------------------------------------------- bounds


def _parse_params(tokens: list[str]) -> dict[str, int]:
    out: dict[str, int] = {}
    for token in tokens:
        for piece in token.split(","):
            piece = piece.strip()
            if not piece:
                continue
            key, sep, value = piece.partition("=")
            if not sep:
                raise _InputError(f"parameter {piece!r} is not of the form key=value")
            try:
                out[key.strip()] = int(value)
            except ValueError:
                raise _InputError(f"parameter {piece!r} needs an integer value") from None
    return out


def _cmd_bounds(args) -> int:
    spec = _bounds.FORMULAS.get(args.formula)
    if spec is None:
        known = ", ".join(sorted(_bounds.FORMULAS))
        raise _InputError(f"unknown formula {args.formula!r}; known: {known}")
    given = _parse_params(args.params)
    if set(given) != set(spec.param_names):
        raise _InputError(
            f"{args.formula} expects parameters {', '.join(spec.param_names)}"
        )
    try:
        formula = _bounds.BoundFormula(
            args.formula, tuple((k, given[k]) for k in spec.param_names)
        )
        value = _bounds.evaluate_bound(formula)
    except ValueError as exc:
        raise _InputError(str(exc)) from None
    if args.json:
        _emit(
            {
                "command": "bounds",
                "formula": formula.name,
                "params": {k: str(v) for k, v in formula.params},
                "closed_form": value.exact_form,
                "ln_lower": value.ln_lower_str,
                "ln_upper": value.ln_upper_str,
                "exact": None if value.exact is None else str(value.exact),
                "magnitude": value.magnitude_str(),
                "precision": str(value.precision_digits),
            }
        )
        return 0
    print(f"formula: {formula}")
    print(f"closed form: {value.exact_form}")
    print(f"ln lower: {value.ln_lower_str}")
    print(f"ln upper: {value.ln_upper_str}")
    if value.exact is not None:
        print(f"exact: {value.exact}")
    print(f"magnitude: {value.magnitude_str()}")
    print(f"precision: {value.precision_digits} digits")
    return 0


# ---------------------------------------------------------------- sunit


def _parse_places(text: str) -> PlaceSet:
    primes = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece or piece.lower() in ("inf", "oo"):
            continue  # the archimedean place is always included
        try:
            primes.append(int(piece))
        except ValueError:
            raise _InputError(f"bad prime {piece!r}") from None
    try:
        return PlaceSet.of(*primes)
    except ValueError as exc:
        raise _InputError(str(exc)) from None


def _summary(count: int, rank: int, ln_bound: str, box: int) -> dict:
    return {"count": count, "rank": rank, "ln_bound": ln_bound, "box": box}


def _cmd_sunit(args) -> int:
    S = _parse_places(args.primes)
    if args.bound < 1:
        raise _InputError("--bound must be a positive integer")
    if args.three_term is not None:
        pieces = args.three_term.split(",")
        if len(pieces) != 3:
            raise _InputError("--three-term needs three comma-separated coefficients")
        try:
            coeffs = tuple(Fraction(piece.strip()) for piece in pieces)
        except (ValueError, ZeroDivisionError) as exc:
            raise _InputError(f"bad coefficient list: {exc}") from None
        try:
            report = count_three_term(S, coeffs, args.bound)
        except ValueError as exc:
            raise _InputError(str(exc)) from None
        summary = _summary(
            report.count, report.problem.rank, report.ln_bound.ln_upper_str, args.bound
        )
        if args.json:
            _emit(
                {
                    "command": "sunit",
                    "S": str(S),
                    "coefficients": [str(c) for c in report.coefficients],
                    **{k: str(v) for k, v in summary.items()},
                    "gamma_rank": str(report.gamma_rank),
                    "bound_ok": report.bound_ok,
                }
            )
        else:
            print(json.dumps(summary))
        return 0
    report = solve_unit_equation(S, args.bound)
    summary = _summary(
        report.count, report.problem.rank, report.ln_bound.ln_upper_str, args.bound
    )
    if args.json:
        _emit(
            {
                "command": "sunit",
                "S": str(S),
                "solutions": [
                    [str(u.numerator), str(u.denominator), str(v.numerator), str(v.denominator)]
                    for u, v in report.solutions
                ],
                **{k: str(v) for k, v in summary.items()},
                "gamma_rank": str(report.gamma_rank),
                "bound_ok": report.bound_ok,
            }
        )
        return 0
    print("u_num,u_den,v_num,v_den")
    for u, v in report.solutions:
        print(f"{u.numerator},{u.denominator},{v.numerator},{v.denominator}")
    print(json.dumps(summary), file=sys.stderr)
    return 0


# ---------------------------------------------------------------- verify


def _cmd_verify(args) -> int:
    if args.iterations is not None and args.iterations < 1:
        raise _InputError("--iterations must be a positive integer")
    reports = run_suite(args.suite, args.iterations, args.seed)
    failed = [r for r in reports if not r.passed]
    if args.json:
        _emit(
            {
                "command": "verify",
                "seed": str(args.seed),
                "suites": [r.to_dict() for r in reports],
                "passed": not failed,
            }
        )
    else:
        for r in reports:
            line = f"{r.suite}: cases={r.cases} comparisons={r.comparisons}"
            print(line + (" passed" if r.passed else " FAILED"))
            if not r.passed:
                print(f"counterexample: {r.counterexample}")
        if not failed:
            print(f"all suites passed (seed={args.seed})")
    return 4 if failed else 0


# ---------------------------------------------------------------- semigroup


def _cmd_semigroup(args) -> int:
    exprs = [piece.strip() for piece in args.maps.split(",") if piece.strip()]
    if not exprs:
        raise _InputError("--maps needs at least one expression")
    maps = [_parse_map_arg(e) for e in exprs]
    per_map = [tuple(bad_primes(m)) for m in maps]
    union = sorted(set().union(*per_map)) if per_map else []
    s = 1 + len(union)
    c = _bounds.evaluate_bound(_bounds.canci_c(s))
    orbits: list[OrbitCertificate] = []
    undecided: UndecidedOrbit | None = None
    if args.point is not None:
        start = _parse_point_arg(args.point)
        for m in maps:
            result = detect_orbit(m, start)
            if isinstance(result, UndecidedOrbit):
                undecided = result
                break
            orbits.append(result)
    if args.json:
        doc = {
            "command": "semigroup",
            "generators": [
                {"map": str(m), "bad_primes": [str(p) for p in bad]}
                for m, bad in zip(maps, per_map)
            ],
            "union_bad_primes": [str(p) for p in union],
            "s": str(s),
            "ln_c_s": c.ln_upper_str,
        }
        if args.point is not None:
            doc["orbits"] = [
                {
                    "map": str(cert.map),
                    "start": str(cert.start),
                    "tail_length": str(cert.tail_length),
                    "period": str(cert.period),
                }
                for cert in orbits
            ]
        _emit(doc)
    else:
        for m, bad in zip(maps, per_map):
            print(f"generator {m}: bad primes {_primes_str(bad)}")
        print(f"union bad primes: {_primes_str(union)}")
        print(f"s = {s}")
        print(f"ln c(s) upper: {c.ln_upper_str}")
        for cert in orbits:
            print(
                f"orbit of {cert.start} under {cert.map}: m={cert.tail_length} "
                f"n={cert.period} length {cert.length}"
            )
    if undecided is not None:
        _fail(f"orbit undecided: {undecided.reason} after {undecided.steps} steps")
        return 3
    return 0


# ---------------------------------------------------------------- driver


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbita",
        description="Certify finite orbits of rational maps on the projective line "
        "over Q, with exact arithmetic and log-space bound comparisons.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbit", help="iterate a map and certify the orbit")
    p.add_argument("--map", required=True, help="rational map expression in z")
    p.add_argument("--point", required=True, help="start point (rational, inf, or [x:y])")
    p.add_argument("--max-steps", type=int, default=10000)
    p.add_argument("--max-bits", type=int, default=4096)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("delta", help="p-adic logarithmic distance between two points")
    p.add_argument("--p", type=int, required=True, help="prime")
    p.add_argument("--a", required=True, help="first point")
    p.add_argument("--b", required=True, help="second point")

    p = sub.add_parser("badprimes", help="primes of bad reduction via the resultant")
    p.add_argument("--map", required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("bounds", help="evaluate a named bound formula in log-space")
    p.add_argument("--formula", required=True)
    p.add_argument("--params", nargs="*", default=[], help="key=value pairs")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("sunit", help="scan S-unit equations inside an exponent box")
    p.add_argument("--primes", required=True, help="comma-separated finite primes")
    p.add_argument("--bound", type=int, required=True, help="exponent box radius")
    p.add_argument("--three-term", default=None, metavar="a1,a2,a3")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="run the randomized property suites")
    p.add_argument("--suite", required=True, choices=SUITE_NAMES + ("all",))
    p.add_argument("--iterations", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("semigroup", help="common good-reduction place set of generators")
    p.add_argument("--maps", required=True, help="comma-separated map expressions")
    p.add_argument("--point", default=None)
    p.add_argument("--json", action="store_true")

    return parser


_DISPATCH = {
    "orbit": _cmd_orbit,
    "delta": _cmd_delta,
    "badprimes": _cmd_badprimes,
    "bounds": _cmd_bounds,
    "sunit": _cmd_sunit,
    "verify": _cmd_verify,
    "semigroup": _cmd_semigroup,
}


# flags whose values may begin with "-" (negative rationals, map expressions);
# fused into --flag=value so argparse does not mistake the value for an option
_VALUE_FLAGS = {"--map", "--maps", "--point", "--a", "--b", "--three-term", "--primes"}


def _fuse_values(argv: list[str]) -> list[str]:
    out: list[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
        else:
            out.append(token)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_fuse_values(list(argv)))
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 for --help
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.command](args)
    except _InputError as exc:
        _fail(str(exc))
        return 2
    except (FactorizationBudgetError, BitBudgetError, EnumerationCapError) as exc:
        _fail(f"budget exhausted: {exc}")
        return 3
    except (CertificateCheckError, AssertionError) as exc:
        _fail(f"internal invariant breach: {exc}")
        return 5
    except ValueError as exc:
        # bad ORBITA_PRECISION and similar configuration-level rejections
        _fail(str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
