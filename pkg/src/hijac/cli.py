"""Command line front end: ``hijac <command> ...``.

Exit status: 0 success or PASS, 1 a check failed (or stayed undecided),
2 usage or parse error, 3 the computation was aborted.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .groebner import MonomialOrder
from .jacobian import Version, jac_matrix, jacobian_ideal
from .motivic import (
    check_separating_specialization,
    compare_pipeline,
    contact_locus_class,
    expand,
    nearby_cycle,
    zeta,
)
from .nash import (
    ContactWitness,
    check_automorphism_equivariance,
    check_contact_invariance,
    check_det_congruence,
    check_inclusion_J1_power,
    check_unit_invariance,
    check_weighted_homogeneous_invariance,
    nash_algebra,
)
from .poly import Polynomial, PolySyntaxError, Substitution, parse_poly, substitute
from .report import FAIL, PASS, UNDECIDED, Report
from .resolve import (
    GraphFormatError,
    ResolutionError,
    dump_graph,
    load_graph,
    m_separate,
    resolve_curve,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ABORT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _infer_d(*texts) -> int:
    idx = [int(k) for t in texts if t for k in re.findall(r"x(\d+)", t)]
    return max(idx, default=1)


def _poly(text: str, d: int) -> Polynomial:
    return parse_poly(text, d)


def _dim(args, *texts) -> int:
    d = args.d if args.d is not None else _infer_d(*texts)
    if d < 1:
        raise UsageError("-d must be positive")
    return d


def _sigma(text: str, d: int) -> Substitution:
    parts = [p for p in text.split(";")]
    if len(parts) != d:
        raise UsageError(f"--sigma needs {d} components separated by ';'")
    return Substitution([_poly(p, d) for p in parts])


def _mono(alpha) -> str:
    return Polynomial.monomial(alpha).to_string() if any(alpha) else "1"


class Output:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout
        self.record: dict = {}
        self.lines: list = []

    def text(self, line=""):
        self.lines.append(line)

    def flush(self):
        if self.as_json:
            self.stream.write(json.dumps(self.record, indent=2) + "\n")
        elif self.lines:
            self.stream.write("\n".join(self.lines) + "\n")


def _report_status(rep: Report) -> int:
    return EXIT_OK if rep.status not in (FAIL, UNDECIDED) else EXIT_FAIL


def _emit_report(out: Output, rep: Report) -> int:
    out.record.update(rep.to_dict())
    out.text(rep.to_text())
    return _report_status(rep)


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def cmd_jac(args, out):
    d = _dim(args, args.f)
    f = _poly(args.f, d)
    M = jac_matrix(f, args.n, Version(args.version))
    out.record.update(
        command="jac", f=f.to_string(), d=d, n=args.n, version=args.version,
        shape=list(M.shape), rows=[_mono(b) for b in M.rows], cols=[_mono(a) for a in M.cols],
        matrix=[[e.to_string() for e in row] for row in M.entries],
    )
    out.text(f"Jac_{args.n}({f}) [{args.version}], {M.shape[0]}x{M.shape[1]}")
    out.text("rows: " + ", ".join(_mono(b) for b in M.rows))
    out.text("cols: " + ", ".join(_mono(a) for a in M.cols))
    out.text(M.to_text())
    return EXIT_OK


def cmd_ideal(args, out):
    d = _dim(args, args.f)
    f = _poly(args.f, d)
    I = jacobian_ideal(f, args.n, Version(args.version))
    gens = I.to_strings()
    out.record.update(command="ideal", f=f.to_string(), d=d, n=args.n, generators=gens)
    out.text(f"J_{args.n}({f}) = <" + ", ".join(gens) + ">")
    return EXIT_OK


def cmd_nash_dim(args, out):
    d = _dim(args, args.f)
    f = _poly(args.f, d)
    A = nash_algebra(f, args.n, Version(args.version))
    out.record.update(command="nash-dim", f=f.to_string(), d=d, n=args.n,
                      dimension=str(A.dimension), basis=A.basis_strings())
    out.text(f"dim M_{args.n}({f}) = {A.dimension}")
    if A.monomial_basis:
        out.text("basis: " + ", ".join(A.basis_strings()))
    return EXIT_OK


def cmd_check(args, out):
    texts = [args.f, getattr(args, "g", None), getattr(args, "u", None), getattr(args, "sigma", None)]
    d = _dim(args, *texts)
    f = _poly(args.f, d)
    kind = args.kind
    u = _poly(args.u, d) if getattr(args, "u", None) else Polynomial.constant(1, d)
    if kind == "unit":
        rep = check_unit_invariance(f, u, args.n)
    elif kind == "det-congruence":
        rep = check_det_congruence(f, u, args.n)
    elif kind == "autoeq":
        if not args.sigma:
            raise UsageError("check autoeq needs --sigma")
        order = MonomialOrder.LOCAL_GRADED if args.order == "local" else MonomialOrder.GRADED_REVLEX
        rep = check_automorphism_equivariance(f, _sigma(args.sigma, d), args.n, order)
    elif kind == "contact":
        if not args.sigma:
            raise UsageError("check contact needs --sigma (and usually --u)")
        sigma = _sigma(args.sigma, d)
        g = _poly(args.g, d) if args.g else u * substitute(f, sigma)
        rep = check_contact_invariance(f, g, ContactWitness(sigma, u, args.degree_bound), args.n)
    elif kind == "inclusion":
        rep = check_inclusion_J1_power(f, args.n)
    elif kind == "weighted":
        if not args.weights:
            raise UsageError("check weighted needs --weights")
        try:
            weights = [int(w) for w in args.weights.split(",")]
        except ValueError:
            raise UsageError("--weights must be comma separated integers") from None
        rep = check_weighted_homogeneous_invariance(f, weights, u, args.n)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(kind)
    out.record["command"] = f"check {kind}"
    return _emit_report(out, rep)


def _read_graph(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return load_graph(text)


def _write(args, out, text):
    if args.output:
        Path(args.output).write_text(text)
        out.text(f"wrote {args.output}")
    else:
        out.text(text.rstrip("\n"))


def cmd_resolve(args, out):
    d = _dim(args, args.f)
    if d != 2:
        raise UsageError("resolve handles plane curves (d = 2) only")
    f = _poly(args.f, d)
    G = resolve_curve(f, args.id)
    text = dump_graph(G)
    out.record.update(command="resolve", f=f.to_string(), graph=text,
                      divisors=[dict(id=i, N=N, nu=nu, kind=k) for i, N, nu, k in G.data()],
                      intersections=[list(p) for p in G.pairs])
    _write(args, out, text)
    return EXIT_OK


def cmd_separate(args, out):
    G = _read_graph(args.graph)
    H = m_separate(G, args.m)
    text = dump_graph(H)
    out.record.update(command="separate", m=args.m, added=len(H.divisors) - len(G.divisors), graph=text)
    _write(args, out, text)
    return EXIT_OK


def cmd_zeta(args, out):
    G = _read_graph(args.graph)
    d = args.d if args.d is not None else G.d
    Z = zeta(G, d)
    out.record.update(command="zeta", graph=G.id, terms=Z.to_lines())
    out.text(f"Z(T) for {G.id}, F(p,q) = L^p T^q / (1 - L^p T^q):")
    for line in Z.to_lines():
        out.text("  " + line)
    if args.expand:
        coeffs = expand(Z, args.expand, d)
        table = []
        for m, c in enumerate(coeffs, 1):
            direct = contact_locus_class(G, m, d)
            table.append(dict(m=m, value=str(c), agrees=c == direct))
        out.record["expansion"] = table
        out.text(f"L^(dm) * [T^m] Z with d={d}:")
        for row in table:
            out.text(f"  m={row['m']}: {row['value']}" + ("" if row["agrees"] else "  (MISMATCH)"))
        if not all(r["agrees"] for r in table):
            return EXIT_FAIL
    return EXIT_OK


def cmd_nearby(args, out):
    G = _read_graph(args.graph)
    S = nearby_cycle(G, G.d)
    out.record.update(command="nearby", graph=G.id, value=str(S))
    out.text(f"S_f = {S}")
    return EXIT_OK


def cmd_expand(args, out):
    G = _read_graph(args.graph)
    d = args.d if args.d is not None else G.d
    rows = []
    for m, c in enumerate(expand(zeta(G, d), args.upto, d), 1):
        rows.append(dict(m=m, value=str(c)))
        out.text(f"[X_{m}] = {c}")
    out.record.update(command="expand", graph=G.id, d=d, coefficients=rows)
    if args.check_separating:
        status = EXIT_OK
        for m in range(1, args.upto + 1):
            rep = check_separating_specialization(G, m, d)
            out.text(rep.to_text())
            out.record.setdefault("specialization", []).append(rep.to_dict())
            status = max(status, _report_status(rep))
        return status
    return EXIT_OK


def cmd_compare(args, out):
    d = _dim(args, args.f, args.g)
    rep = compare_pipeline(_poly(args.f, d), _poly(args.g, d), args.m, args.n)
    out.record["command"] = "compare"
    return _emit_report(out, rep)


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hijac", description="Higher Jacobian ideals, Nash algebras and motivic zeta functions.")
    p.add_argument("--json", action="store_true", help="emit structured JSON instead of text")
    sub = p.add_subparsers(dest="command", required=True)

    def poly_opts(sp, need_n=True):
        sp.add_argument("-f", "--f", dest="f", required=True, help="polynomial in x1..xd")
        sp.add_argument("-d", type=int, default=None, help="number of variables (default: inferred)")
        if need_n:
            sp.add_argument("-n", type=int, default=1, help="order n >= 1")
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)

    versions = [v.value for v in Version]
    sp = sub.add_parser("jac", help="print the higher Jacobian matrix")
    poly_opts(sp)
    sp.add_argument("--version", choices=versions, default="zero")
    sp.set_defaults(func=cmd_jac)

    sp = sub.add_parser("ideal", help="canonical generators of J_n(f)")
    poly_opts(sp)
    sp.add_argument("--version", choices=versions, default="zero")
    sp.set_defaults(func=cmd_ideal)

    sp = sub.add_parser("nash-dim", help="dimension and monomial basis of M_n(f)")
    poly_opts(sp)
    sp.add_argument("--version", choices=versions, default="zero")
    sp.set_defaults(func=cmd_nash_dim)

    sp = sub.add_parser("check", help="run one of the invariance checks")
    sp.add_argument("kind", choices=["contact", "unit", "det-congruence", "autoeq", "inclusion", "weighted"])
    poly_opts(sp)
    sp.add_argument("-g", "--g", dest="g", default=None, help="second function (contact)")
    sp.add_argument("--u", default=None, help="unit u (default 1)")
    sp.add_argument("--sigma", default=None, help="automorphism images separated by ';'")
    sp.add_argument("--degree-bound", type=int, default=None, help="truncated witness mode")
    sp.add_argument("--weights", default=None, help="comma separated positive weights")
    sp.add_argument("--order", choices=["local", "global"], default="local")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("resolve", help="resolve a plane curve germ and emit a .rg graph")
    poly_opts(sp, need_n=False)
    sp.add_argument("-o", "--output", default=None)
    sp.add_argument("--id", default=None, help="graph id used to label class symbols")
    sp.set_defaults(func=cmd_resolve)

    sp = sub.add_parser("separate", help="blow up intersections until the graph is m-separating")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--m", "-m", type=int, required=True)
    sp.add_argument("-o", "--output", default=None)
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_separate)

    sp = sub.add_parser("zeta", help="motivic zeta function of a graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--expand", type=int, default=0, help="also expand up to T^M")
    sp.add_argument("-d", type=int, default=None)
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_zeta)

    sp = sub.add_parser("nearby", help="motivic nearby cycle of a graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_nearby)

    sp = sub.add_parser("expand", help="contact locus classes [X_m] for m = 1..M")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--upto", type=int, required=True)
    sp.add_argument("-d", type=int, default=None)
    sp.add_argument("--check-separating", action="store_true")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("compare", help="compare contact loci of f and g with g - f in J_n(f)")
    sp.add_argument("-f", "--f", dest="f", required=True)
    sp.add_argument("-g", "--g", dest="g", required=True)
    sp.add_argument("-d", type=int, default=None)
    sp.add_argument("-n", type=int, default=2)
    sp.add_argument("--m", "-m", type=int, default=6)
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_compare)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    out = Output(args.json, stdout)
    try:
        for name in ("n", "m", "upto", "expand"):
            v = getattr(args, name, None)
            if v is not None and v < (0 if name == "expand" else 1):
                raise UsageError(f"{name} must be positive")
        status = args.func(args, out)
    except (UsageError, PolySyntaxError, GraphFormatError) as exc:
        stderr.write(f"hijac: error: {exc}\n")
        return EXIT_USAGE
    except ResolutionError as exc:
        stderr.write(f"hijac: aborted: {exc}\n")
        return EXIT_ABORT
    except ValueError as exc:
        stderr.write(f"hijac: error: {exc}\n")
        return EXIT_USAGE
    except ArithmeticError as exc:
        stderr.write(f"hijac: aborted: {exc}\n")
        return EXIT_ABORT
    out.flush()
    return status


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
