"""Command-line front-end: expression evaluation, singular products,
cohomology tables, verification suites, bracket structure constants.

Exit codes are the machine contract: 0 success (and, for the checking
commands, full agreement), 1 a verification failure, 2 a malformed
invocation.  Text output is human-oriented; ``--json`` switches stdout to
the JSON documents, and ``--out PATH`` writes the JSON document to a file
regardless of the stdout format.
"""

import argparse
import json
import sys
from fractions import Fraction

from .fock import GradingScheme
from .engine import circle, ope_singular
from .exprs import ParseError, eval_expr, parse, state_json, state_text
from .weil import brst_context, cohomology_dim, is_coboundary, class_coordinate
from .suites import SUITES, bracket_pairs, run_suite


def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("not a rational: %r" % (text,))


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                   help="emit the JSON document on stdout")
    p.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS,
                   help="also write the JSON document to PATH")
    p.add_argument("--lambda", dest="lam", type=_rational, metavar="Q",
                   default=argparse.SUPPRESS,
                   help="weight of the bosonic ghost (default 2)")
    return p


def build_parser():
    common = _common()
    top = argparse.ArgumentParser(
        prog="ghostweil",
        description="exact free-field vertex algebra calculator",
        parents=[common])
    top.set_defaults(json=False, out=None, lam=None)
    sub = top.add_subparsers(dest="command", required=True)

    p_ope = sub.add_parser("ope", parents=[common],
                           help="singular part of the product of two fields")
    p_ope.add_argument("exprA")
    p_ope.add_argument("exprB")

    p_circ = sub.add_parser("circle", parents=[common],
                            help="one circle product of two fields")
    p_circ.add_argument("n", type=int)
    p_circ.add_argument("exprA")
    p_circ.add_argument("exprB")

    p_weil = sub.add_parser("weil", parents=[common],
                            help="cohomology of the coupled ghost complex")
    wsub = p_weil.add_subparsers(dest="weil_command", required=True)

    p_dims = wsub.add_parser("dims", parents=[common],
                             help="table of cohomology dimensions")
    p_dims.add_argument("--jmax", type=int, required=True)
    p_dims.add_argument("--imin", type=int, default=-2)
    p_dims.add_argument("--imax", type=int, default=4)

    p_ver = wsub.add_parser("verify", parents=[common],
                            help="run a named verification suite")
    p_ver.add_argument("--suite", required=True,
                       choices=sorted(SUITES) + ["all"])
    p_ver.add_argument("--kmax", type=int, default=None)

    p_bt = wsub.add_parser("bracket-table", parents=[common],
                           help="computed structure constants of the bracket")
    p_bt.add_argument("--nmax", type=int, default=3)
    return top


def _emit(args, text_lines, doc):
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    if args.json:
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        for line in text_lines:
            sys.stdout.write(line + "\n")


def _eval_two(args):
    scheme = GradingScheme(args.lam if args.lam is not None else 2, 2, 1)
    a = eval_expr(parse(args.exprA), scheme)
    b = eval_expr(parse(args.exprB), scheme)
    return a, b


def _cmd_ope(args):
    a, b = _eval_two(args)
    poles = ope_singular(a, b)
    lines = []
    doc = {"poles": {}}
    for n in sorted(poles, reverse=True):
        lines.append("(z-w)^-%d: %s" % (n + 1, state_text(poles[n])))
        doc["poles"][str(n)] = state_json(poles[n])
    if not poles:
        lines.append("regular (no singular part)")
    _emit(args, lines, doc)
    return 0


def _cmd_circle(args):
    a, b = _eval_two(args)
    out = circle(a, args.n, b)
    _emit(args, [state_text(out)], state_json(out))
    return 0


def _cmd_dims(args):
    lam = args.lam if args.lam is not None else 2
    ctx = brst_context(lam)
    dims = {}
    for i in range(args.imin, args.imax + 1):
        for j in range(0, args.jmax + 1):
            dims[(i, j)] = cohomology_dim(ctx, i, j)
    width = max(len(str(v)) for v in dims.values())
    lines = ["bidegree table, rows bc-ghost number, columns bg-ghost number"]
    header = "  i\\j " + " ".join("%*d" % (width, j) for j in range(args.jmax + 1))
    lines.append(header)
    for i in range(args.imin, args.imax + 1):
        row = " ".join("%*d" % (width, dims[(i, j)]) for j in range(args.jmax + 1))
        lines.append("%5d %s" % (i, row))
    doc = {"dims": {"%d,%d" % key: val for key, val in sorted(dims.items())}}
    _emit(args, lines, doc)
    bad = [(key, val) for key, val in sorted(dims.items())
           if val != (1 if key[0] in (0, 1) else 0)]
    if bad:
        (i, j), val = bad[0]
        sys.stderr.write(
            "dimension pattern mismatch at (%d,%d): got %d, want %d\n"
            % (i, j, val, 1 if i in (0, 1) else 0))
        return 1
    return 0


def _cmd_verify(args):
    checks = run_suite(args.suite, lam=args.lam, kmax=args.kmax)
    lines = []
    failures = [c for c in checks if not c[1]]
    for name, ok, detail in checks:
        if ok:
            lines.append("ok   %s" % name)
        else:
            lines.append("FAIL %s%s" % (name, (": " + detail) if detail else ""))
    lines.append("%d checks, %d failures" % (len(checks), len(failures)))
    doc = {"suite": args.suite,
           "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in checks],
           "failures": len(failures)}
    _emit(args, lines, doc)
    if failures:
        name, _, detail = failures[0]
        sys.stderr.write("first failure: %s%s\n"
                         % (name, (": " + detail) if detail else ""))
        return 1
    return 0


def _cmd_bracket_table(args):
    ctx = brst_context(2)
    rows = []
    for family, n, m, got, _, kind in bracket_pairs(args.nmax):
        if kind == "even" and family == "even/even":
            ok, _w = is_coboundary(ctx, got)
            coeff = Fraction(0) if ok else None
        else:
            coeff = class_coordinate(ctx, got, verify=False)
        rows.append((family, n, m, coeff))
    lines = ["family     n  m  coefficient of the (n+m)-th power"]
    for family, n, m, coeff in rows:
        lines.append("%-9s %2d %2d  %s" % (family, n, m,
                                           "nonzero?" if coeff is None else coeff))
    doc = {"bracket_table": [
        {"family": family, "n": n, "m": m,
         "coefficient": None if coeff is None else str(coeff)}
        for family, n, m, coeff in rows]}
    _emit(args, lines, doc)
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "ope":
            return _cmd_ope(args)
        if args.command == "circle":
            return _cmd_circle(args)
        if args.command == "weil":
            if args.weil_command == "dims":
                return _cmd_dims(args)
            if args.weil_command == "verify":
                return _cmd_verify(args)
            return _cmd_bracket_table(args)
    except ParseError as exc:
        sys.stderr.write("syntax error: %s\n" % exc)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    raise AssertionError("unreachable command dispatch")


if __name__ == "__main__":
    sys.exit(main())
