"""``polyabc`` command-line front end.

Every subcommand wraps one library call.  Output is human text by
default and a versioned JSON document with ``--json``.

Exit codes: 0 ok, 1 precondition failure, 2 usage / syntax / field
error, 3 a theorem check produced a disproof witness (or an internal
consistency check failed).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from polyabc import errors
from polyabc.abc import (
    VerdictKind,
    mason_stothers_verdict,
    ms_noncoprime_verdict_char0,
    noncoprime_bound,
    wronskian,
)
from polyabc.corollaries import (
    CatalanParams,
    ConstancyKind,
    RatFunc,
    davenport_check,
    davenport_prime_check,
    descend,
    elliptic_parametrization_check,
    flt_catalan_check,
    flt_check,
)
from polyabc.field import FieldDesc, GF, Q
from polyabc.harness import SearchConfig, Target, reproduce_worked_examples, run_search
from polyabc.parser import format_poly, parse_poly
from polyabc.radical import div_radical, radical

SCHEMA_VERSION = "1.0"
DEFAULT_SEED = 42

EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2, 3

# flags whose value is a polynomial and may legitimately start with '-'
_VALUE_FLAGS = {"-a", "-b", "-c", "-f", "-g", "--x-num", "--x-den", "--y-num", "--y-den",
                "--coeffs"}

_TARGETS = {
    "ms": Target.MASON_STOTHERS,
    "noncoprime": Target.NON_COPRIME,
    "flt": Target.FLT,
    "davenport": Target.DAVENPORT,
    "lemmas": Target.LEMMAS,
}

_PRECONDITION_ERRORS = (
    errors.PreconditionViolated,
    errors.ZeroPolynomial,
    errors.BothZero,
    errors.CubeEqualsSquare,
    errors.NotAssociated,
    errors.ExponentsNotCoprime,
    errors.DerivativeNonzero,
    errors.NotCharP,
    errors.WrongCharacteristic,
    errors.NotZeroSum,
    errors.ZeroWronskian,
)
_USAGE_ERRORS = (
    errors.PolySyntaxError,
    errors.LiteralOutOfField,
    errors.NotPrime,
    errors.FieldMismatch,
    errors.ConfigError,
    errors.NotFiniteField,
    errors.DivisionByZero,
)


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_field(text: str) -> FieldDesc:
    try:
        return _parse_field(text)
    except errors.NotPrime as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _parse_field(text: str) -> FieldDesc:
    if text == "q":
        return Q
    if text.startswith("fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise errors.NotPrime(f"bad modulus in {text!r}") from None
        return GF(p)
    raise errors.NotPrime(f"unknown field {text!r}; use q or fp:<prime>")


def _merge_dash_values(argv: list[str]) -> list[str]:
    """Glue ``-b -t^5`` into ``-b=-t^5`` so argparse does not read a flag."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


# -- subcommand bodies: each returns (exit code, result payload, text) -------------------


def _poly(args, text: str):
    return parse_poly(text, args.field)


def _verdict_text(v) -> str:
    s = f"{v.kind.value} (max3 = {v.max3_degree}, bound = {v.radical_degree}"
    if v.margin is not None:
        s += f", margin = {v.margin}"
    return s + ")"


def cmd_radical(args):
    r = radical(_poly(args, args.expr))
    return EXIT_OK, {"value": format_poly(r), "degree": r.nat_degree}, format_poly(r)


def cmd_div_radical(args):
    r = div_radical(_poly(args, args.expr))
    return EXIT_OK, {"value": format_poly(r), "degree": r.nat_degree}, format_poly(r)


def cmd_wronskian(args):
    w = wronskian(_poly(args, args.a), _poly(args, args.b))
    return EXIT_OK, {"value": format_poly(w), "degree": w.degree}, format_poly(w)


def cmd_check_ms(args):
    v = mason_stothers_verdict(_poly(args, args.a), _poly(args, args.b), _poly(args, args.c))
    code = EXIT_VIOLATION if v.kind is VerdictKind.VIOLATION else EXIT_OK
    return code, {"verdict": v.to_dict()}, _verdict_text(v)


def cmd_check_ms_noncoprime(args):
    a, b, c = _poly(args, args.a), _poly(args, args.b), _poly(args, args.c)
    if args.raw:
        # degree arithmetic only; outside char 0 a violation is a finding, not a disproof
        v = noncoprime_bound(a, b, c)
        code = EXIT_OK
    else:
        v = ms_noncoprime_verdict_char0(a, b, c)
        code = EXIT_VIOLATION if v.kind is VerdictKind.VIOLATION else EXIT_OK
    mode = "raw" if args.raw else "char0"
    return code, {"verdict": v.to_dict(), "mode": mode}, _verdict_text(v)


def _constancy(rep):
    code = EXIT_VIOLATION if rep.kind is ConstancyKind.THEOREM_VIOLATED else EXIT_OK
    text = f"{rep.kind.value} degrees={list(rep.degrees)}"
    if rep.descent_trace:
        text += f" descent={[list(t) for t in rep.descent_trace]}"
    return code, {"constancy": rep.to_dict()}, text


def cmd_check_flt(args):
    return _constancy(flt_check(args.n, _poly(args, args.a), _poly(args, args.b),
                                _poly(args, args.c)))


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise errors.PolySyntaxError(f"bad coefficient {text!r}", 0) from None


def cmd_check_catalan(args):
    u, v, w = (_fraction(x) for x in args.coeffs.split(","))
    params = CatalanParams(*args.exponents, u, v, w)
    return _constancy(flt_catalan_check(params, _poly(args, args.a), _poly(args, args.b),
                                        _poly(args, args.c)))


def cmd_check_davenport(args):
    fn = davenport_prime_check if args.prime_variant else davenport_check
    res = fn(_poly(args, args.f), _poly(args, args.g))
    code = EXIT_OK if res.holds else EXIT_VIOLATION
    return code, {"davenport": res.to_dict()}, f"lhs = {res.lhs}, rhs = {res.rhs}, holds = {res.holds}"


def cmd_check_elliptic(args):
    x = RatFunc(_poly(args, args.x_num), _poly(args, args.x_den))
    y = RatFunc(_poly(args, args.y_num), _poly(args, args.y_den))
    return _constancy(elliptic_parametrization_check(x, y))


def cmd_descend(args):
    polys = [_poly(args, e) for e in args.exprs]
    if not args.field.characteristic:
        raise errors.NotCharP("descent needs a prime field")
    final, trace = descend(polys)
    result = {
        "inputs": [format_poly(p) for p in polys],
        "final": [format_poly(p) for p in final],
        "trace": [list(t) for t in trace],
    }
    text = ", ".join(result["final"]) + f"  (steps: {len(trace)})"
    return EXIT_OK, result, text


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("POLYABC_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise errors.ConfigError(f"POLYABC_SEED must be an integer, got {env!r}") from None


def cmd_search(args):
    cfg = SearchConfig(
        field=args.field,
        max_degree=args.max_degree,
        target=_TARGETS[args.target],
        n=args.n,
        seed=_seed(args),
        workers=args.workers,
        samples=args.samples,
        record_limit=args.record_limit,
        orbit_reduction=not args.no_orbit_reduction,
    )
    args.seed = cfg.seed  # echo the resolved seed
    report = run_search(cfg)
    disproof = cfg.target is not Target.NON_COPRIME or not cfg.field.characteristic
    code = EXIT_VIOLATION if report.violation_count and disproof else EXIT_OK
    text = (f"{report.mode} {cfg.target.value} over {cfg.field}: examined {report.triples_examined}, "
            f"holds {report.holds_count}, vanishing {report.vanishing_count}, "
            f"violations {report.violation_count}, tight {report.tight_count}")
    return code, {"report": report.to_dict(timing=False)}, text


def cmd_reproduce(args):
    records = reproduce_worked_examples()
    ok = all(r.passed for r in records)
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name}" + (" (informational)" if r.informational else "")
             for r in records]
    return (EXIT_OK if ok else EXIT_VIOLATION,
            {"examples": [r.to_dict() for r in records], "all_passed": ok},
            "\n".join(lines))


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="polyabc", description="Exact checks of the polynomial abc theorem.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--field", type=parse_field, default=Q, help="q or fp:<prime> (default q)")
        p.add_argument("--json", action="store_true", help="emit a JSON report document")
        p.set_defaults(func=fn)
        return p

    p = add("radical", cmd_radical, "monic radical of a polynomial")
    p.add_argument("expr")
    p = add("div-radical", cmd_div_radical, "a / radical(a)")
    p.add_argument("expr")
    p = add("wronskian", cmd_wronskian, "W(a, b) = a b' - a' b")
    p.add_argument("-a", required=True)
    p.add_argument("-b", required=True)
    for name, fn, help_text in (
        ("check-ms", cmd_check_ms, "Mason-Stothers verdict for a coprime zero-sum triple"),
        ("check-ms-noncoprime", cmd_check_ms_noncoprime, "variant without coprimality"),
        ("check-flt", cmd_check_flt, "polynomial Fermat: a^n + b^n = c^n forces constants"),
        ("check-catalan", cmd_check_catalan, "Fermat-Catalan: u a^p + v b^q + w c^r = 0"),
    ):
        p = add(name, fn, help_text)
        for flag in ("-a", "-b", "-c"):
            p.add_argument(flag, required=True)
        if name == "check-ms-noncoprime":
            p.add_argument("--raw", action="store_true",
                           help="degree arithmetic only, any characteristic")
        if name == "check-flt":
            p.add_argument("-n", type=int, required=True)
        if name == "check-catalan":
            p.add_argument("--exponents", type=int, nargs=3, required=True, metavar=("P", "Q", "R"))
            p.add_argument("--coeffs", default="1,1,-1", help="u,v,w (default 1,1,-1)")
    for name, prime in (("check-davenport", False), ("check-davenport-prime", True)):
        p = add(name, cmd_check_davenport, "deg f + 2 <= 2 deg(f^3 - g^2)")
        p.add_argument("-f", required=True)
        p.add_argument("-g", required=True)
        p.set_defaults(prime_variant=prime)
    p = add("check-elliptic", cmd_check_elliptic, "rational points of y^2 = x^3 + 1 are constant")
    p.add_argument("--x-num", required=True)
    p.add_argument("--x-den", default="1")
    p.add_argument("--y-num", required=True)
    p.add_argument("--y-den", default="1")
    p = add("descend", cmd_descend, "take p-th roots while all derivatives vanish")
    p.add_argument("exprs", nargs="+")
    p = add("search", cmd_search, "exhaustive or randomized verification run")
    p.add_argument("--target", choices=sorted(_TARGETS), required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("-n", type=int, default=None, help="exponent for the flt target")
    p.add_argument("--seed", type=int, default=None, help="default: $POLYABC_SEED or 42")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--record-limit", type=int, default=100)
    p.add_argument("--no-orbit-reduction", action="store_true")
    add("reproduce", cmd_reproduce, "re-run the worked examples and counterexamples")
    return parser


def _echo(args, argv) -> dict:
    skip = {"func", "json", "field"}
    echo = {"name": args.command, "argv": list(argv), "field": args.field.tag}
    for k, v in sorted(vars(args).items()):
        if k not in skip and k != "command":
            echo[k] = list(v) if isinstance(v, (list, tuple)) else v
    return echo


def _error(exc: Exception) -> dict:
    err = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, errors.PreconditionViolated):
        err["hypothesis"] = exc.hypothesis
    if isinstance(exc, errors.PolySyntaxError):
        err["position"] = exc.position
    return err


def run_command(argv: list[str]) -> tuple[int, dict, str]:
    """Execute one command; returns (exit code, report document, human text)."""
    t0 = time.perf_counter()
    argv = list(argv)
    doc = {"schema_version": SCHEMA_VERSION, "command": {"name": None, "argv": argv},
           "result": None}
    try:
        args = build_parser().parse_args(_merge_dash_values(argv))
    except UsageError as exc:
        doc["error"] = {"type": "UsageError", "message": str(exc)}
        doc["timing"] = {"wall_time_ms": round((time.perf_counter() - t0) * 1000, 1)}
        return EXIT_USAGE, doc, f"usage error: {exc}"
    try:
        code, result, text = args.func(args)
        doc["result"] = result
    except _PRECONDITION_ERRORS as exc:
        code, text = EXIT_PRECONDITION, f"precondition failed: {exc}"
        doc["error"] = _error(exc)
    except _USAGE_ERRORS as exc:
        code, text = EXIT_USAGE, f"error: {exc}"
        doc["error"] = _error(exc)
    except errors.TheoremViolated as exc:
        code, text = EXIT_VIOLATION, f"theorem violated: {exc}"
        doc["error"] = _error(exc)
    except errors.InconsistencyError as exc:
        code, text = EXIT_VIOLATION, f"internal consistency check failed: {exc}"
        doc["error"] = _error(exc)
    doc["command"] = _echo(args, argv)
    doc["timing"] = {"wall_time_ms": round((time.perf_counter() - t0) * 1000, 1)}
    return code, doc, text


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    wants_json = "--json" in argv
    if not argv or argv[0] in ("-h", "--help") or "-h" in argv or "--help" in argv:
        try:
            build_parser().parse_args(argv)
        except UsageError as exc:
            print(f"usage error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        except SystemExit as exc:
            return int(exc.code or 0)
    code, doc, text = run_command(argv)
    if wants_json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    elif code in (EXIT_OK,) or "error" not in doc:
        print(text)
    else:
        print(text, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
