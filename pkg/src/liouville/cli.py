"""``liouville`` command-line tool.

Exit codes: 0 success, 1 domain error, 2 usage error.  Errors are written to
stderr as a JSON object.  Output is deterministic for fixed flags.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__, errata
from .construction import (
    ConstructionError,
    Kind,
    NuParams,
    SparseNumber,
    audit_witnesses,
    empirical_exponent_report,
    gen_ultra,
    liouville_constant,
    nu_liouville,
    truncation,
    verify_approx,
)
from .contfrac import CertificationGap, expand, expand_enclosure, legendre_locate, rows
from .deduce import FactError, classify, match_triple, parse_facts
from .expr import ParseError, evaluate, parse
from .heights import (
    annihilating_poly,
    constants,
    height_rat,
    icen_bound_for_poly,
    proof_quantities,
)
from .interval import Interval, const_e, exp
from .linforms import (
    BranchError,
    PreconditionError,
    baker_lower_log,
    mw_lower_log,
    replay,
    upper_bound_log,
)
from .magnitude import (
    Magnitude,
    format_rational,
    mag_from_int,
    mag_from_interval,
    mag_from_log10,
    parse_rational,
)
from .polytriple import Field, OmegaError, Poly, Triple
from .powertower import functional_check, h_inf, h_k, sweep

PREC_MIN, PREC_MAX = 64, 16384
DEFAULT_PRECISION = 256


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


USAGE_ERRORS = (UsageError, PreconditionError, ParseError, FactError)
DOMAIN_ERRORS = (ValueError, ArithmeticError, ConstructionError, OmegaError, BranchError, CertificationGap)


# -- helpers -----------------------------------------------------------


def _digits(n: int) -> str:
    return format_rational(Fraction(n))


def _iv(iv: Interval) -> list[str]:
    return [format(iv.lo, ".40g"), format(iv.hi, ".40g")]


def _rat(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _magnitude_arg(text: str, prec: int) -> Magnitude:
    """``log10:<rational>`` gives ``10**x``; anything else is a constant expression."""
    if text.startswith("log10:"):
        return mag_from_log10(_rat(text[6:]))
    v = evaluate(parse(text), prec)
    if v.is_point() and v.lo == int(v.lo) and v.lo >= 1:
        return mag_from_int(int(v.lo))
    return mag_from_interval(v, "up")


def _exponent_json(m: Magnitude):
    if m.level == 0 and m.value < 10**30:
        return m.value
    return m.to_json()


def _precision(args) -> int:
    raw = args.precision if args.precision is not None else os.environ.get("LIOUVILLE_PRECISION")
    if raw is None:
        return DEFAULT_PRECISION
    try:
        p = int(raw)
    except ValueError:
        raise UsageError(f"precision must be an integer, got {raw!r}") from None
    if not PREC_MIN <= p <= PREC_MAX:
        raise UsageError(f"precision {p} outside [{PREC_MIN}, {PREC_MAX}]")
    return p


def _check_path(path: str | None):
    if path is None:
        return
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(parent):
        raise UsageError(f"output directory does not exist: {parent}")
    if not os.access(parent, os.W_OK):
        raise UsageError(f"output directory is not writable: {parent}")


def _write_csv(path: str, header: list[str], records: list[dict]):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=header, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in records:
        w.writerow({k: "" if r.get(k) is None else r[k] for k in header})
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(buf.getvalue())


def _text(result: dict) -> str:
    lines = []
    for k, v in result.items():
        lines.append(f"{k}: {v if isinstance(v, (str, int)) else json.dumps(v, sort_keys=True)}")
    return "\n".join(lines) + "\n"


def _number_from(args, prec: int) -> tuple[SparseNumber, list]:
    if getattr(args, "input", None):
        with open(args.input, encoding="utf-8") as fh:
            obj = json.load(fh)
        obj = obj.get("result", obj)
        x = SparseNumber.from_json(obj.get("number", obj))
        if args.depth is not None:
            if not 1 <= args.depth <= x.depth:
                raise UsageError(f"--depth must lie in 1..{x.depth}")
            x = SparseNumber(x.terms[: args.depth], x.kind, x.nu, x.infinite)
    else:
        if args.depth is None:
            raise UsageError("--depth is required")
        if args.kind == "ultra":
            return gen_ultra(args.depth, prec)
        if args.kind == "liouville":
            x = liouville_constant(args.depth)
        else:
            if args.nu is None:
                raise UsageError("--nu is required for the nu construction")
            digits = [int(d) for d in args.digits.split(",")] if args.digits else None
            x = nu_liouville(NuParams(args.nu, args.depth, digits), prec=prec)
    if x.kind is Kind.CUSTOM:
        return x, []
    ws = []
    for k in range(1, x.depth + 1):
        if x.terms[k - 1][0].level > 1:
            break
        ws.append(truncation(x, k, prec=prec)[1])
    return x, ws


# -- subcommands -------------------------------------------------------


def cmd_construct(args, prec):
    x, ws = _number_from(args, prec)
    checks = []
    for k in range(1, x.depth):
        c = verify_approx(x, k, prec=prec)
        checks.append({"k": k, **c.to_json()})
    notes = [errata.FLOOR_PLACEMENT] if x.kind is Kind.NU_LIOUVILLE else []
    return {
        "number": x.to_json(),
        "s": [_exponent_json(e) for e in x.exponents],
        "witnesses": [w.to_json() for w in ws],
        "checks": checks,
        "exponents": empirical_exponent_report(ws, prec) if ws else None,
    }, notes


def cmd_cf(args, prec):
    if args.x is not None:
        cf = expand(_rat(args.x))
    elif args.lo is not None and args.hi is not None:
        cf = expand_enclosure((_rat(args.lo), _rat(args.hi)))
    else:
        x, _ = _number_from(args, prec)
        cf = expand_enclosure(x.rational_enclosure())
    located = []
    for text in args.locate or []:
        r = _rat(text)
        entry = {"p": _digits(r.numerator), "q": _digits(r.denominator)}
        try:
            m = legendre_locate(cf, r.numerator, r.denominator)
            entry.update(status="LOCATED" if m is not None else "CRITERION_NOT_MET", index=m)
        except CertificationGap as exc:
            entry.update(status="CERTIFICATION_GAP", index=None, message=str(exc))
        located.append(entry)
    table = []
    for row in rows(cf):
        table.append({k: (format_rational(v) if isinstance(v, Fraction) else
                          _digits(v) if isinstance(v, int) and k != "m" else v) for k, v in row.items()})
    if args.csv:
        _write_csv(args.csv, ["m", "b_m", "p_m", "q_m", "err_lower", "err_upper"], table)
    return {
        "source": cf.source.value,
        "enclosure": [format_rational(cf.lo), format_rational(cf.hi)],
        "quotients": [_digits(b) for b in cf.quotients],
        "certified_prefix_length": cf.certified_prefix_length,
        "rows": table,
        "located": located,
    }, []


def _parse_candidate(text: str) -> tuple[int, int, Fraction]:
    try:
        frac, theta = text.split(":")
    except ValueError:
        raise UsageError(f"audit candidate must look like c/d:theta, got {text!r}") from None
    r = _rat(frac)
    return r.numerator, r.denominator, _rat(theta)


def cmd_measure(args, prec):
    x, ws = _number_from(args, prec)
    report = empirical_exponent_report(ws, prec) if ws else None
    audit = [a.to_json() for a in audit_witnesses(x, [_parse_candidate(c) for c in args.audit or []])]
    return {"number": x.to_json(), "exponents": report, "audit": audit}, [errata.INFIMUM_SUPREMUM]


def _triple(args) -> Triple:
    names = tuple(n for n in (args.names or "").split(",") if n)
    try:
        return Triple.parse(args.P, args.Q, args.R, names)
    except ParseError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_admissible(args, prec):
    t = _triple(args)
    adm = t.admissibility(Field(args.ring), args.r_rational)
    notes = list(adm.notes)
    if "(iii)" in adm.violated and errata.CLAUSE_III not in notes:
        notes.append(errata.CLAUSE_III)
    return {"triple": {k: str(getattr(t, k)) for k in "PQR"}, **adm.to_json()}, notes


def cmd_heights(args, prec):
    if args.poly is not None:
        if args.at is None:
            raise UsageError("--poly needs --at")
        P = Poly.parse(args.poly)
        x = _rat(args.at)
        exact = height_rat(P.eval(x))
        bound = icen_bound_for_poly(P, x)
        holds = bound.level > 0 or exact <= bound.value
        return {"mode": "icen", "poly": str(P), "at": format_rational(x), "exact_height": exact,
                "icen_bound": bound.to_json(), "holds": holds}, [errata.LEMMA1_INDEX]
    if args.qval is not None:
        if args.rval is None or args.q is None or args.r is None:
            raise UsageError("--qval needs --rval, --q and --r")
        ap = annihilating_poly(_rat(args.qval), _rat(args.rval), int(args.q), args.r, args.n,
                               None if args.c1 is None else _rat(args.c1))
        check = ap.check(prec)
        return {"mode": "annihilator", **ap.to_json(), "check": _iv(check),
                "check_straddles_zero": check.contains(0)}, []
    if args.P is None or args.Q is None or args.R is None or args.xi is None or args.gamma is None:
        raise UsageError("give --poly/--at, --qval/--rval/--q/--r, or -P/-Q/-R with --xi and --gamma")
    t = _triple(args)
    lo, _, hi = args.xi.partition(":")
    xi = Interval.from_bounds(_rat(lo), _rat(hi or lo), prec)
    g = _rat(args.gamma)
    c = constants(t, xi, height_rat(g), prec=prec)
    out = {"mode": "constants", **c.to_json()}
    if args.q is not None:
        q = mag_from_int(int(args.q))
        pq = proof_quantities(c, q, prec)
        out.update({k: pq[k].to_json() for k in ("Ak", "Dk", "Bk", "Tk")})
        out["quantity_notes"] = pq["notes"]
    return out, []


def cmd_bounds(args, prec):
    if args.kind == "mw":
        if None in (args.D, args.A1, args.A2, args.B):
            raise UsageError("mw needs --D, --A1, --A2 and --B")
        r = mw_lower_log(_magnitude_arg(args.D, prec), _magnitude_arg(args.A1, prec),
                         _magnitude_arg(args.A2, prec), _magnitude_arg(args.B, prec), prec)
    elif args.kind == "baker":
        if args.n is None or args.alpha is None or args.D is None:
            raise UsageError("baker needs --n, --alpha and --D")
        alpha = [int(h) for h in args.alpha.split(",")]
        beta = [int(h) for h in (args.beta or "").split(",") if h]
        r = baker_lower_log(args.n, alpha, beta, int(args.D), prec)
    else:
        if None in (args.c6, args.q):
            raise UsageError("upper needs --c6 and --q")
        from .construction import Witness
        q = _magnitude_arg(args.q, prec)
        om = _magnitude_arg(args.omega, prec) if args.omega not in (None, "0") else 0
        w = Witness(0, None, q, om if om else mag_from_int(1), False)
        r = upper_bound_log(_magnitude_arg(args.c6, prec), w, om, prec)
    out = {"kind": args.kind, "log10_bound": r.to_json()}
    if r.abs is not None:
        try:
            out["log10_bound_approx"] = format(r.sign * r.abs.to_interval(64).mid(), ".12g")
        except OverflowError:
            out["loglog10_abs"] = format(r.abs.loglog10(64).mid(), ".12g")
    return out, []


def cmd_tower(args, prec):
    out = {}
    if args.sweep:
        try:
            lo, hi, n = args.sweep.split(":")
            lo, hi, n = _rat(lo), _rat(hi), int(n)
        except ValueError:
            raise UsageError("--sweep expects lo:hi:n") from None
        if n < 2:
            raise UsageError("--sweep needs n >= 2")
        xs = [lo + (hi - lo) * i / (n - 1) for i in range(n)]
        records = sweep(xs, _rat(args.tol), prec)
        if args.csv:
            _write_csv(args.csv, ["x", "h_inf", "residual", "iterations", "status"], records)
        out["sweep"] = records
        return out, []
    if args.x is None:
        raise UsageError("give --x or --sweep")
    x = evaluate(parse(args.x), prec)
    out["x"] = _iv(x)
    if args.k is not None:
        out["h_k"] = {"k": args.k, "value": _iv(h_k(x, args.k, prec))}
    if args.functional is not None:
        r1, r2 = functional_check(x, args.functional, prec)
        out["functional"] = {"k": args.functional, "residual_next": _iv(r1), "residual_two": _iv(r2),
                             "straddles_zero": r1.contains(0) and r2.contains(0)}
    if args.infinite or (args.k is None and args.functional is None):
        out["infinite"] = h_inf(x, _rat(args.tol), prec).to_json()
    e = const_e(prec)
    out["domain"] = [_iv(exp(-e)), _iv(exp(1 / e))]
    return out, []


def cmd_replay(args, prec):
    t = _triple(args)
    rep = replay(NuParams(args.nu, args.kmax), t, _rat(args.gamma), args.kmax,
                 non_theorem=args.non_theorem, precision=prec)
    return rep.to_json(), []


def cmd_classify(args, prec):
    facts = parse_facts(args.fact or [])
    e = parse(args.expr, sorted(facts.in_t | facts.algebraic))
    v = classify(e, facts)
    t = match_triple(e, facts.algebraic)
    out = {"expr": args.expr, "facts": list(args.fact or []), **v.to_json()}
    out["matched_triple"] = None if t is None else {k: str(getattr(t, k)) for k in "PQR"}
    return out, []


# -- parser ------------------------------------------------------------


def _add_number_args(p):
    p.add_argument("--kind", choices=["nu", "ultra", "liouville"], default="nu")
    p.add_argument("--nu", help="rational nu, e.g. 1/2")
    p.add_argument("--depth", type=int)
    p.add_argument("--digits", help="comma-separated digit choices in {1, 2}")
    p.add_argument("--input", help="JSON file produced by construct")


def _add_triple_args(p, required=True):
    p.add_argument("-P", required=required)
    p.add_argument("-Q", required=required)
    p.add_argument("-R", required=required)
    p.add_argument("--names", help="comma-separated symbolic constants")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--precision", help=f"working precision in bits ({PREC_MIN}..{PREC_MAX})")
    common.add_argument("--json", dest="output", help="write the JSON report here instead of stdout")
    common.add_argument("--format", choices=["json", "text"], default="json")

    parser = _Parser(prog="liouville", description="Liouville-type numbers, heights, bounds and towers.")
    parser.add_argument("--version", action="version", version=f"liouville {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("construct", parents=[common], help="build a sparse Liouville-type number")
    _add_number_args(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("cf", parents=[common], help="continued fraction and Legendre location")
    _add_number_args(p)
    p.add_argument("--x", help="exact rational input")
    p.add_argument("--lo")
    p.add_argument("--hi")
    p.add_argument("--locate", action="append")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("measure", parents=[common], help="empirical exponents and witness audit")
    _add_number_args(p)
    p.add_argument("--audit", action="append", help="candidate c/d:theta")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("admissible", parents=[common], help="admissibility of a triple")
    _add_triple_args(p)
    p.add_argument("--ring", choices=["Z", "QBAR"], default="Z")
    p.add_argument("--r-rational", action="store_true")
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("heights", parents=[common], help="heights, annihilators and proof constants")
    _add_triple_args(p, required=False)
    p.add_argument("--poly")
    p.add_argument("--at")
    p.add_argument("--qval")
    p.add_argument("--rval")
    p.add_argument("--q")
    p.add_argument("--r", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--c1")
    p.add_argument("--xi", help="enclosure lo:hi")
    p.add_argument("--gamma")
    p.set_defaults(func=cmd_heights)

    p = sub.add_parser("bounds", parents=[common], help="lower and upper bounds for linear forms")
    p.add_argument("--kind", choices=["mw", "baker", "upper"], required=True)
    p.add_argument("--D")
    p.add_argument("--A1")
    p.add_argument("--A2")
    p.add_argument("--B")
    p.add_argument("--n", type=int)
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--c6")
    p.add_argument("--q")
    p.add_argument("--omega")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("tower", parents=[common], help="power towers")
    p.add_argument("--x")
    p.add_argument("--k", type=int)
    p.add_argument("--infinite", action="store_true")
    p.add_argument("--functional", type=int)
    p.add_argument("--tol", default="1e-30")
    p.add_argument("--sweep", help="lo:hi:n grid for the infinite tower")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_tower)

    p = sub.add_parser("replay", parents=[common], help="replay the contradiction chain")
    p.add_argument("--nu", required=True)
    _add_triple_args(p)
    p.add_argument("--gamma", required=True)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--non-theorem", action="store_true")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("classify", parents=[common], help="transcendence verdict for an expression")
    p.add_argument("--expr", required=True)
    p.add_argument("--fact", action="append")
    p.set_defaults(func=cmd_classify)
    return parser


def _fail(kind: str, exc: BaseException, code: int) -> int:
    err = {"error": {"kind": kind, "type": type(exc).__name__, "message": str(exc)}}
    if isinstance(exc, ParseError):
        err["error"]["column"] = exc.column
    sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
    return code


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        prec = _precision(args)
        _check_path(args.output)
        _check_path(getattr(args, "csv", None))
        result, notes = args.func(args, prec)
    except USAGE_ERRORS as exc:
        return _fail("usage", exc, 2)
    except DOMAIN_ERRORS as exc:
        return _fail("domain", exc, 1)
    except OSError as exc:
        return _fail("io", exc, 1)
    payload = {
        "command": args.command,
        "provenance": {"tool": "liouville", "version": __version__, "precision": prec},
        "result": result,
        "notes": notes,
    }
    text = _text(result) if args.format == "text" else json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
