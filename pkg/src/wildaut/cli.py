"""wildaut command-line interface.

Exit codes: 0 success, 1 failed internal check, 2 bad input or degenerate
cover, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from concurrent.futures import ProcessPoolExecutor

from .cover import AnalysisError, CapExceeded, analyze, modify_type1, modify_type2
from .field import FieldError, field_create
from .parse import ParseError, parse_poly
from .poly import CoverError, format_poly, reduce_with_witness
from .report import report_dict, to_json, to_text

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _field_args(ap: argparse.ArgumentParser):
    ap.add_argument("--p", type=int, required=True, help="characteristic")
    ap.add_argument("--ext", type=int, default=1, help="extension degree e of the coefficient field")
    ap.add_argument("--modulus", help="comma-separated modulus coefficients, constant term first")


def _output_args(ap: argparse.ArgumentParser):
    g = ap.add_mutually_exclusive_group()
    g.add_argument("--json", dest="fmt", action="store_const", const="json")
    g.add_argument("--text", dest="fmt", action="store_const", const="text")
    ap.set_defaults(fmt="json")
    ap.add_argument("--timing", action="store_true", help="add a timing field to JSON output")


def _analysis_args(ap: argparse.ArgumentParser):
    ap.add_argument("--max-order-cap", type=int, default=13, help="largest allowed log_p |G|")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    ap.add_argument("--oracle", action="store_true", help="force brute-force root arbitration")


def _poly_arg(ap: argparse.ArgumentParser):
    ap.add_argument("poly_pos", nargs="?", metavar="POLY")
    ap.add_argument("--poly", help="polynomial in X")


def _field(args):
    mod = None
    if args.modulus:
        try:
            mod = [int(c) for c in args.modulus.split(",")]
        except ValueError:
            raise UsageError("modulus must be a comma-separated list of integers") from None
    return field_create(args.p, args.ext, mod)


def _poly(args, field, attr="poly"):
    text = getattr(args, attr, None)
    if text is None and attr == "poly":
        text = getattr(args, "poly_pos", None)
    if text is None:
        raise UsageError("no polynomial given")
    return parse_poly(text, field)


def _kw(args):
    return dict(seed=args.seed, max_order_exp=args.max_order_cap, oracle=args.oracle)


def _emit(rep, args, extra=None):
    if args.fmt == "text":
        out = to_text(rep)
        if extra:
            out += "".join(f"{k:<13}{v}\n" for k, v in extra.items())
        return out
    if extra:
        d = report_dict(rep, timing=args.timing)
        d.update(extra)
        return json.dumps(d, sort_keys=True, separators=(",", ":")) + "\n"
    return to_json(rep, timing=args.timing) + "\n"


# ---------------------------------------------------------------------------
# subcommands; each returns the text to print
# ---------------------------------------------------------------------------

def cmd_analyze(args) -> str:
    F = _field(args)
    return _emit(analyze(_poly(args, F), **_kw(args)), args)


def cmd_reduce(args) -> str:
    F = _field(args)
    f = _poly(args, F)
    red, Q, const = reduce_with_witness(f)
    m = red.degree() if not red.is_zero() else None
    d = {
        "input": format_poly(f),
        "reduced": format_poly(red),
        "witness": format_poly(Q),
        "constant": F.fmt(const),
        "conductor": m,
        "genus": None if m is None else (m - 1) * (F.p - 1) // 2,
    }
    if args.fmt == "text":
        return "".join(f"{k:<11}{v}\n" for k, v in d.items())
    return json.dumps(d, sort_keys=True, separators=(",", ":")) + "\n"


def cmd_modify(args) -> str:
    F = _field(args)
    f = _poly(args, F)
    if (args.type1 is None) == (args.type2 is None):
        raise UsageError("give exactly one of --type1 S or --type2 g")
    if args.type1 is not None:
        res = modify_type1(f, parse_poly(args.type1, F), **_kw(args))
    else:
        res = modify_type2(f, parse_poly(args.type2, F), **_kw(args))
    extra = {
        "modification": "type1" if args.type1 is not None else "type2",
        "divisor": format_poly(res.divisor, "Y"),
        "modification_checks": list(res.checks),
    }
    if args.fmt == "text":
        extra["modification_checks"] = ", ".join(res.checks)
    return _emit(res.report, args, extra)


def cmd_realize(args) -> str:
    from . import realize as R

    kind = args.kind
    extra = {"construction": kind}
    if kind == "linearized":
        f = R.realize_linearized(args.p, args.n)
    elif kind == "cyclic-p2":
        f = R.realize_cyclic_p2(args.p)
    elif kind == "type-II":
        data = R.realize_type_II_data(args.p, args.n)
        f = data.f
        extra["theta"] = data.f.ring.fmt(data.theta)
    elif kind == "d8":
        if args.case is None:
            raise UsageError("--case is required for the d8 family")
        c = R.realize_D8_family(args.case)
        f = c.f
        K = c.field
        extra.update(case=args.case, a=K.fmt(c.a), b=K.fmt(c.b), S=format_poly(c.S_F, "Y"))
    elif kind == "classic-d8":
        f = R.classic_D8_example()
    else:  # argparse restricts choices
        raise UsageError(f"unknown construction {kind}")
    K = f.ring
    extra["f"] = format_poly(f)
    extra["f_field"] = {"p": K.p, "e": K.e, "modulus": list(K.modulus)}
    if args.no_analyze:
        if args.fmt == "text":
            return "".join(f"{k:<13}{v}\n" for k, v in extra.items())
        return json.dumps(extra, sort_keys=True, separators=(",", ":")) + "\n"
    return _emit(analyze(f, **_kw(args)), args, extra)


def cmd_generic(args) -> str:
    from . import generic as G

    U = G.universal_family(args.p, args.m)
    ad = G.generic_additive_polynomial(U)
    d = {"p": args.p, "m": args.m, "parameters": list(U.names), "ad_generic": G.format_generic(ad)}
    if args.arbitrate:
        if (args.p, args.m) != (2, 5):
            raise UsageError("--arbitrate is defined for p=2, m=5")
        res = G.arbitrate_candidates(U, G.disputed_coefficient_candidates(U), G.disputed_coefficient_points(U))
        d["arbitration"] = [{"point": a.value, "accepted": a.accepted} for a in res]
    if args.fmt == "text":
        out = [f"p={args.p} m={args.m} parameters {', '.join(U.names)}", f"Ad_generic = {d['ad_generic']}"]
        for a in d.get("arbitration", []):
            out.append(f"  {a['point']}: " + ", ".join(f"Y^2 coeff {k}: {'accepted' if v else 'rejected'}"
                                                   for k, v in a["accepted"].items()))
        return "\n".join(out) + "\n"
    return json.dumps(d, sort_keys=True, separators=(",", ":")) + "\n"


SELFTEST = [
    (["--p", "2", "--poly", "X^3+X^7+X^19+X^35+X^41"], "extraspecial(8, III.a) [D8]"),
    (["--p", "3", "--poly", "X^2"], "cyclic(3)"),
    (["--p", "2", "--poly", "X^5"], "extraspecial(32, III.b)"),
    (["--p", "3", "--poly", "X^5+2*X^7"], "cyclic(9)"),
    (["--p", "3", "--poly", "X^4"], "extraspecial(27, I) [E(27)]"),
]


def cmd_selftest(args) -> str:
    out = []
    bad = 0
    parser = build_parser()
    for argv, want in SELFTEST:
        a = parser.parse_args(["analyze", *argv])
        got = json.loads(cmd_analyze(a))["group"]["label"]
        ok = got == want
        bad += not ok
        out.append(f"{'PASS' if ok else 'FAIL'}  p={argv[1]} {argv[3]}: {got}")
    out.append(f"selftest: {len(SELFTEST) - bad}/{len(SELFTEST)} passed")
    if bad:
        raise _SelftestFailed("\n".join(out) + "\n")
    return "\n".join(out) + "\n"


class _SelftestFailed(AnalysisError):
    pass


# ---------------------------------------------------------------------------
# batch
# ---------------------------------------------------------------------------

def _batch_line(item):
    """(lineno, ok, output, n_checks) for one request line."""
    lineno, text = item
    parser = build_parser(exit_on_error=False)
    try:
        argv = shlex.split(text)
        if argv and argv[0] in SUBCOMMANDS and argv[0] != "batch":
            sub = argv
        else:
            sub = ["analyze", *argv]
        args = parser.parse_args(sub)
        if args.command == "analyze":
            args.fmt = "json"
            F = _field(args)
            rep = analyze(_poly(args, F), **_kw(args))
            d = report_dict(rep)
            d["line"] = lineno
            return lineno, True, json.dumps(d, sort_keys=True, separators=(",", ":")), len(rep.checks)
        out = args.func(args).rstrip("\n")
        return lineno, True, out, 0
    except (ParseError, CoverError, FieldError, UsageError, CapExceeded, AnalysisError,
            ValueError, argparse.ArgumentError) as exc:
        err = {"line": lineno, "error": type(exc).__name__, "message": str(exc)}
        return lineno, False, json.dumps(err, sort_keys=True, separators=(",", ":")), 0
    except SystemExit:
        err = {"line": lineno, "error": "UsageError", "message": "could not parse request"}
        return lineno, False, json.dumps(err, sort_keys=True, separators=(",", ":")), 0


def read_batch(path: str) -> list:
    with (sys.stdin if path == "-" else open(path, encoding="utf-8")) as fh:
        lines = fh.read().splitlines()
    items = []
    for k, raw in enumerate(lines, 1):
        s = raw.split("#", 1)[0].strip()
        if s:
            items.append((k, s))
    return items


def run_batch(items, jobs: int = 1):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_batch_line, items))
    return [_batch_line(it) for it in items]


def cmd_batch(args) -> str:
    items = read_batch(args.file)
    if not items:
        return ""
    results = run_batch(items, args.jobs)
    ok = sum(r[1] for r in results)
    checks = sum(r[3] for r in results)
    lines = [r[2] for r in results]
    lines.append(f"summary: {len(results)} requests, {ok} ok, {len(results) - ok} failed, {checks} checks passed")
    out = "\n".join(lines) + "\n"
    if ok != len(results):
        raise _BatchFailed(out)
    return out


class _BatchFailed(Exception):
    def __init__(self, output):
        super().__init__("batch had failing lines")
        self.output = output


# ---------------------------------------------------------------------------

SUBCOMMANDS = ("analyze", "realize", "generic", "reduce", "modify", "batch", "selftest")


def build_parser(exit_on_error: bool = True) -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wildaut", description=__doc__.splitlines()[0],
                                 exit_on_error=exit_on_error)
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyze the cover W^p - W = f(X)")
    _field_args(a), _poly_arg(a), _output_args(a), _analysis_args(a)
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("reduce", help="Artin-Schreier reduction of f")
    _field_args(r), _poly_arg(r), _output_args(r)
    r.set_defaults(func=cmd_reduce)

    m = sub.add_parser("modify", help="type-1 (f o S) or type-2 (f + g) modification")
    _field_args(m), _poly_arg(m), _output_args(m), _analysis_args(m)
    m.add_argument("--type1", metavar="S", help="additive separable S(X)")
    m.add_argument("--type2", metavar="G", help="the added polynomial g(X)")
    m.set_defaults(func=cmd_modify)

    z = sub.add_parser("realize", help="build a cover from one of the explicit constructions")
    z.add_argument("kind", choices=["linearized", "cyclic-p2", "type-II", "d8", "classic-d8"])
    z.add_argument("--p", type=int, default=2)
    z.add_argument("--n", type=int, default=1)
    z.add_argument("--case", choices=["1", "2i", "2ii", "2iii"])
    z.add_argument("--no-analyze", action="store_true", help="print the polynomial only")
    _output_args(z), _analysis_args(z)
    z.set_defaults(func=cmd_realize)

    g = sub.add_parser("generic", help="additive polynomial of the universal family over F_p[t]")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--arbitrate", action="store_true", help="oracle arbitration of the disputed coefficient")
    _output_args(g)
    g.set_defaults(func=cmd_generic)

    b = sub.add_parser("batch", help="one request per line; '#' starts a comment")
    b.add_argument("file", help="request file, or - for stdin")
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_batch)

    s = sub.add_parser("selftest", help="run a few fixed analyses")
    s.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except _BatchFailed as exc:
        sys.stdout.write(exc.output)
        return EXIT_CHECK
    except _SelftestFailed as exc:
        sys.stdout.write(str(exc))
        return EXIT_CHECK
    except CapExceeded as exc:
        print(f"wildaut: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ParseError, CoverError, FieldError, UsageError, ValueError) as exc:
        print(f"wildaut: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"wildaut: internal check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
