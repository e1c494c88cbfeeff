"""Embedded resolution of plane curve germs by iterated point blowups.

Every chart carries its map back to the root coordinates, so pullback
orders and covering units can be recomputed at any time.  Chart
coordinates are always called y1, y2; root coordinates x1, x2.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

import sympy

from .groebner import groebner_basis, membership, normal_form
from .jacobian import IdealGens
from .poly import Polynomial, Substitution, parse_poly, substitute
from .report import FAIL, PASS, UNDECIDED, Report

__all__ = [
    "Chart",
    "DivisorRecord",
    "Intersection",
    "Stratum",
    "ResolutionGraph",
    "ResolutionError",
    "NonRationalCenter",
    "GraphFormatError",
    "factor_over_q",
    "resolve_curve",
    "m_separate",
    "verify_pullback_orders",
    "verify_discrepancies",
    "covering_units",
    "compare_coverings",
    "dump_graph",
    "load_graph",
]

CHART_NAMES = ("y1", "y2")
EXCEPTIONAL = "exceptional"
STRICT = "strict"


class ResolutionError(ValueError):
    pass


class NonRationalCenter(ResolutionError):
    """A blowup centre is needed at a point that is not defined over Q."""

    def __init__(self, minpoly: str, chart: str):
        super().__init__(f"non-rational centre in chart {chart}: root of {minpoly}")
        self.minpoly = minpoly
        self.chart = chart


class GraphFormatError(ValueError):
    pass


# ----------------------------------------------------------------------
# records
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Chart:
    id: str
    map_to_root: Substitution | None
    divisors_visible: tuple = ()  # ((divisor id, local equation), ...)
    coords: tuple = CHART_NAMES

    def equation(self, div_id: str) -> Polynomial | None:
        for i, eq in self.divisors_visible:
            if i == div_id:
                return eq
        return None


@dataclass(frozen=True)
class DivisorRecord:
    id: str
    N: int
    nu: int
    kind: str
    parents: tuple = ()  # divisors through the centre that created it

    def __post_init__(self):
        if self.N < 1 or self.nu < 1:
            raise ValueError(f"divisor {self.id}: N and nu must be positive")
        if self.kind not in (EXCEPTIONAL, STRICT):
            raise ValueError(f"divisor {self.id}: unknown kind {self.kind!r}")


@dataclass(frozen=True)
class Intersection:
    """E_a meets E_b at a point of a chart.

    ``point`` holds rational chart coordinates; a point that is not
    rational is given by generators of its ideal in ``ideal`` instead.
    """

    a: str
    b: str
    chart: str | None = None
    point: tuple | None = None
    ideal: tuple | None = None

    @property
    def pair(self) -> frozenset:
        return frozenset((self.a, self.b))

    def point_ideal(self, d: int = 2) -> tuple:
        if self.ideal is not None:
            return self.ideal
        if self.point is None:
            return ()
        return tuple(Polynomial.variable(i, d) - c for i, c in enumerate(self.point))


@dataclass(frozen=True)
class Stratum:
    """E_I with its covering data: h*f = unit * prod y_i^N_i on ``chart``."""

    I: tuple
    N_I: int
    name: str
    unit: Polynomial | None = None
    chart: str | None = None
    ideal: tuple = ()


@dataclass(frozen=True)
class ResolutionGraph:
    divisors: tuple
    intersections: tuple = ()
    charts: tuple = ()
    strata: tuple = ()
    d: int = 2
    id: str = "G"
    f: Polynomial | None = None
    notes: tuple = ()

    def divisor(self, div_id: str) -> DivisorRecord:
        for e in self.divisors:
            if e.id == div_id:
                return e
        raise KeyError(div_id)

    def chart(self, chart_id: str) -> Chart | None:
        for c in self.charts:
            if c.id == chart_id:
                return c
        return None

    def stratum(self, I) -> Stratum:
        key = _sort_ids(self, I)
        for s in self.strata:
            if s.I == key:
                return s
        raise KeyError(I)

    @property
    def pairs(self) -> list:
        return [(x.a, x.b) for x in self.intersections]

    def is_m_separating(self, m: int) -> bool:
        return all(self.divisor(a).N + self.divisor(b).N > m for a, b in self.pairs)

    def data(self) -> list:
        return [(e.id, e.N, e.nu, e.kind) for e in self.divisors]


def _sort_ids(G, ids) -> tuple:
    order = {e.id: k for k, e in enumerate(G.divisors)}
    return tuple(sorted(ids, key=lambda i: order.get(i, len(order))))


def stratum_name(I: Sequence[str]) -> str:
    return "Et(" + ",".join(I) + ")"


# ----------------------------------------------------------------------
# factorisation over Q (sympy)
# ----------------------------------------------------------------------

def _to_sympy(p: Polynomial, gens):
    data = {m: sympy.Rational(c.numerator, c.denominator) for m, c in p.items()}
    return sympy.Poly.from_dict(data, *gens, domain="QQ")


def _from_sympy(P, d: int) -> Polynomial:
    terms = {}
    for m, c in P.terms():
        c = sympy.Rational(c)
        terms[tuple(int(e) for e in m)] = Fraction(int(c.p), int(c.q))
    return Polynomial(terms, d)


def factor_over_q(p: Polynomial):
    """p = c * prod q_j^e_j with primitive irreducible q_j; returns (c, [(q_j, e_j)])."""
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    gens = sympy.symbols(f"t1:{p.d + 1}")
    c, facs = _to_sympy(p, gens).factor_list()
    c = sympy.Rational(c)
    out = []
    const = Fraction(int(c.p), int(c.q))
    for P, e in facs:
        q = _from_sympy(P, p.d)
        prim = q.primitive()
        const *= (q.leading_term()[1] / prim.leading_term()[1]) ** e
        out.append((prim, int(e)))
    out.sort(key=lambda qe: (qe[0].degree(), qe[0].to_string()))
    return const, out


def _roots_on_line(eq: Polynomial):
    """Split eq(0, t) into rational roots and irrational irreducible factors."""
    r = Polynomial({(0, m[1]): c for m, c in eq.items() if m[0] == 0}, 2)
    if not r:
        raise ResolutionError("branch contains the exceptional divisor")
    if r.is_constant():
        return [], []
    _, facs = factor_over_q(r)
    rational, other = [], []
    for q, e in facs:
        if q.degree() == 1:
            rational.append((-q.coefficient((0, 0)) / q.coefficient((0, 1)), e))
        else:
            other.append((q, e))
    return rational, other


# ----------------------------------------------------------------------
# the blowup loop
# ----------------------------------------------------------------------

def _shift(p: Sequence[Fraction]) -> Substitution:
    return Substitution([Polynomial.variable(i, 2) + c for i, c in enumerate(p)])


def _linear(eq: Polynomial) -> tuple:
    return (eq.coefficient((1, 0)), eq.coefficient((0, 1)))


def _is_snc(local) -> bool:
    if len(local) > 2:
        return False
    if any(eq.order() != 1 for _, eq in local):
        return False
    if len(local) == 2:
        (a, b), (c, e) = _linear(local[0][1]), _linear(local[1][1])
        return a * e - b * c != 0
    return True


class _Builder:
    def __init__(self, f: Polynomial, divisors=(), charts=(), intersections=()):
        self.f = f
        self.divisors = list(divisors)
        self.charts = list(charts)
        self.intersections = list(intersections)
        self.blowups = 0

    def rec(self, div_id):
        return next(e for e in self.divisors if e.id == div_id)

    def new_id(self):
        return f"E{len(self.divisors)}"

    def process(self, chart: Chart, p):
        """Make the total transform SNC at point p of chart."""
        shift = _shift(p)
        local = [(i, substitute(eq, shift)) for i, eq in chart.divisors_visible
                 if not eq(*p)]
        if _is_snc(local):
            if len(local) == 2:
                self.add_intersection(local[0][0], local[1][0], chart.id, tuple(p))
            return
        self.blowup(chart, p, local)

    def add_intersection(self, a, b, chart_id=None, point=None, ideal=None):
        a, b = _sort_ids(self, (a, b))
        self.intersections.append(Intersection(a, b, chart_id, point, ideal))

    def blowup(self, chart: Chart, p, local, parents_N=None):
        self.blowups += 1
        N = sum(self.rec(i).N * eq.order() for i, eq in local)
        nu = 2 + sum(self.rec(i).nu - 1 for i, _ in local)
        new = DivisorRecord(self.new_id(), N, nu, EXCEPTIONAL, tuple(i for i, _ in local))
        self.divisors.append(new)
        y1, y2 = Polynomial.variable(0, 2), Polynomial.variable(1, 2)
        p1, p2 = p
        maps = {
            "a": (Substitution([y1 + p1, y1 * y2 + p2]), (1, 0)),
            "b": (Substitution([y1 * y2 + p1, y2 + p2]), (0, 1)),
        }
        made = {}
        for tag, (sigma, axis) in maps.items():
            visible = [(new.id, Polynomial.variable(axis.index(1), 2))]
            for i, eq in chart.divisors_visible:
                if eq(*p):
                    continue
                k = _order_at(eq, p)
                pulled = substitute(eq, sigma)
                q, r = pulled.divmod_monomial(tuple(k * a for a in axis))
                assert not r, "strict transform division must be exact"
                if not q.is_constant():
                    visible.append((i, q.primitive()))
            root = chart.map_to_root.compose(sigma)
            made[tag] = Chart(f"{new.id}{tag}", root, tuple(visible))
            self.charts.append(made[tag])
        A, B = made["a"], made["b"]
        points = {}
        roots = {i: _roots_on_line(eq) for i, eq in A.divisors_visible[1:]}
        for i, (rational, other) in roots.items():
            for t, _ in rational:
                points.setdefault(t, []).append(i)
            for q, e in other:
                name = q.to_string(CHART_NAMES)
                shared = any(q in [x for x, _ in roots[j][1]] for j in roots if j != i)
                if e > 1 or shared:
                    raise NonRationalCenter(name, A.id)
                self.add_intersection(new.id, i, A.id, None, (y1, q))
        for t in sorted(points):
            self.process(A, (Fraction(0), t))
        self.process(B, (Fraction(0), Fraction(0)))
        return new


def _order_at(eq: Polynomial, p) -> int:
    return substitute(eq, _shift(p)).order()


def _strict_factors(f: Polynomial):
    _, facs = factor_over_q(f)
    return [(q, e) for q, e in facs if not q.constant_term()]


def _is_node_like(f: Polynomial) -> bool:
    red = reduce(lambda a, b: a * b, [q for q, _ in _strict_factors(f)], Polynomial.constant(1, 2))
    if red.order() != 2:
        return False
    a, b, c = (red.coefficient(m) for m in ((2, 0), (1, 1), (0, 2)))
    return b * b - 4 * a * c != 0


def resolve_curve(f: Polynomial, graph_id: str | None = None) -> ResolutionGraph:
    """Embedded resolution of the germ of f = 0 at the origin of the plane."""
    if f.d != 2:
        raise ValueError("resolve_curve handles plane curves only (d = 2)")
    if not f:
        raise ValueError("f must be nonzero")
    if f.constant_term():
        raise ValueError("f must vanish at the origin")
    strict = _strict_factors(f)
    ident = Substitution.identity(2)
    divisors = [DivisorRecord(f"E{k}", e, 1, STRICT) for k, (_, e) in enumerate(strict)]
    root = Chart("C0", ident, tuple((f"E{k}", q) for k, (q, _) in enumerate(strict)))
    b = _Builder(f, divisors, [root])
    b.process(root, (Fraction(0), Fraction(0)))
    notes = []
    if _is_node_like(f):
        notes.append("node-like germ: covering comparison may need square roots (quadratic closure)")
    G = ResolutionGraph(
        tuple(b.divisors), _sorted_intersections(b), tuple(b.charts), (), 2,
        graph_id or f"res[{f.to_string()}]", f, tuple(notes),
    )
    return covering_units(G)


def _sorted_intersections(b) -> tuple:
    order = {e.id: k for k, e in enumerate(b.divisors)}
    return tuple(sorted(b.intersections, key=lambda x: (order[x.a], order[x.b])))


# ----------------------------------------------------------------------
# m-separation
# ----------------------------------------------------------------------

def m_separate(G: ResolutionGraph, m: int) -> ResolutionGraph:
    """Blow up intersection points until N_i + N_j > m for every meeting pair."""
    if m < 1:
        raise ValueError("m must be positive")
    b = _Builder(G.f, G.divisors, G.charts, G.intersections)
    notes = list(G.notes)
    changed = False
    while True:
        bad = next((x for x in b.intersections if b.rec(x.a).N + b.rec(x.b).N <= m), None)
        if bad is None:
            break
        changed = True
        b.intersections.remove(bad)
        chart = next((c for c in b.charts if c.id == bad.chart), None)
        if chart is not None and chart.map_to_root is not None and bad.point is not None:
            shift = _shift(bad.point)
            local = [(i, substitute(eq, shift)) for i, eq in chart.divisors_visible
                     if i in (bad.a, bad.b)]
            b.blowup(chart, bad.point, local)
        else:
            ea, eb = b.rec(bad.a), b.rec(bad.b)
            new = DivisorRecord(b.new_id(), ea.N + eb.N, ea.nu + eb.nu, EXCEPTIONAL, (ea.id, eb.id))
            b.divisors.append(new)
            b.add_intersection(ea.id, new.id)
            b.add_intersection(eb.id, new.id)
            notes.append(f"{new.id}: combinatorial blowup of {ea.id}-{eb.id} (no chart data)")
    if not changed:
        return G
    H = replace(G, divisors=tuple(b.divisors), intersections=_sorted_intersections(b),
                charts=tuple(b.charts), strata=(), notes=tuple(notes))
    return covering_units(H)


# ----------------------------------------------------------------------
# verification and covering data
# ----------------------------------------------------------------------

def verify_pullback_orders(f: Polynomial, G: ResolutionGraph) -> bool:
    """Recompute the order of f o map along every visible divisor and compare with N."""
    checked = 0
    for chart in G.charts:
        if chart.map_to_root is None:
            continue
        F = substitute(f, chart.map_to_root)
        if not F:
            return False
        for i, eq in chart.divisors_visible:
            if eq.is_constant():
                continue
            checked += 1
            if F.multiplicity_of(eq) != G.divisor(i).N:
                return False
    return checked > 0 or not G.charts


def verify_discrepancies(G: ResolutionGraph) -> bool:
    """nu of a point blowup = 2 + sum (nu - 1) over the divisors through the centre."""
    for e in G.divisors:
        if e.kind == STRICT:
            if e.nu != 1:
                return False
        elif e.parents:
            if e.nu != 2 + sum(G.divisor(p).nu - 1 for p in e.parents):
                return False
    return True


def covering_units(G: ResolutionGraph) -> ResolutionGraph:
    """Populate the strata of G with N_I and, when charts are known, the units."""
    strata = []
    have_charts = G.f is not None and any(c.map_to_root is not None for c in G.charts)
    pulled = {}

    def F(chart):
        if chart.id not in pulled:
            pulled[chart.id] = substitute(G.f, chart.map_to_root)
        return pulled[chart.id]

    def unit_on(chart, ids):
        den = Polynomial.constant(1, G.d)
        for i in ids:
            den = den * chart.equation(i) ** G.divisor(i).N
        return F(chart).exact_div(den)

    for e in G.divisors:
        I = (e.id,)
        unit = chart = None
        ideal = ()
        if have_charts:
            c = G.chart("C0") if e.kind == STRICT else G.chart(f"{e.id}a")
            if c is not None and c.equation(e.id) is not None:
                chart, unit = c.id, unit_on(c, I)
                ideal = (c.equation(e.id),)
        strata.append(Stratum(I, e.N, stratum_name(I), unit, chart, ideal))
    for x in G.intersections:
        I = (x.a, x.b)
        N_I = gcd(G.divisor(x.a).N, G.divisor(x.b).N)
        unit = None
        ideal = ()
        c = G.chart(x.chart) if x.chart else None
        if have_charts and c is not None and c.map_to_root is not None:
            unit = unit_on(c, I)
            ideal = x.point_ideal(G.d)
        strata.append(Stratum(I, N_I, stratum_name(I), unit, x.chart, ideal))
    return replace(G, strata=tuple(strata))


def _is_nth_power(c: Fraction, n: int) -> bool:
    if c < 0 and n % 2 == 0:
        return False
    s = -1 if c < 0 else 1

    def root(k):
        r = round(abs(k) ** (1.0 / n))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand ** n == abs(k):
                return True
        return False

    return root(c.numerator * s) and root(c.denominator)


def compare_coverings(Gf: ResolutionGraph, Gg: ResolutionGraph) -> Report:
    """Certify that two resolutions carry the same covering data stratum by stratum."""
    rep = Report("covering comparison")
    rep.add("divisor data (id, N, nu, kind)", Gf.data() == Gg.data(),
            "" if Gf.data() == Gg.data() else f"{Gf.data()} vs {Gg.data()}")
    inter_f = [(x.a, x.b, x.chart, x.point) for x in Gf.intersections]
    inter_g = [(x.a, x.b, x.chart, x.point) for x in Gg.intersections]
    rep.add("intersections", inter_f == inter_g)
    nf = [(s.I, s.N_I) for s in Gf.strata]
    ng = [(s.I, s.N_I) for s in Gg.strata]
    rep.add("strata and N_I", nf == ng)
    if not rep.passed:
        return rep
    same = [(c.id, c.map_to_root, tuple(i for i, _ in c.divisors_visible)) for c in Gf.charts] == \
           [(c.id, c.map_to_root, tuple(i for i, _ in c.divisors_visible)) for c in Gg.charts]
    if not same or not Gf.charts:
        rep.add("identical blowup sequence", FAIL, "structurally different resolutions; comparison refused")
        return rep
    rep.add("identical blowup sequence", PASS, f"{len(Gf.charts)} charts")
    for s, t in zip(Gf.strata, Gg.strata):
        label = f"unit on {s.name}"
        if s.N_I == 1:
            rep.add(label, PASS, "trivial covering (N_I = 1)")
            continue
        if s.unit is None or t.unit is None or s.chart != t.chart:
            rep.add(label, UNDECIDED, "no unit data")
            continue
        B = groebner_basis(IdealGens(list(s.ideal), Gf.d))
        if membership(s.unit - t.unit, B):
            rep.add(label, PASS, f"u - v in <{';'.join(p.to_string(CHART_NAMES) for p in s.ideal)}>")
            continue
        nu_, nv = normal_form(s.unit, B), normal_form(t.unit, B)
        if not nu_ or not nv:
            rep.add(label, FAIL, "a unit vanishes on the stratum")
            continue
        c = nv.leading_term()[1] / nu_.leading_term()[1]
        if nv - nu_.scale(c):
            rep.add(label, FAIL, "u and v differ on the stratum", (s.unit - t.unit).to_string(CHART_NAMES))
        elif _is_nth_power(c, s.N_I):
            rep.add(label, PASS, f"v = {c}*u on the stratum, {c} is an N_I-th power")
        else:
            rep.add(label, UNDECIDED, f"v = {c}*u on the stratum; needs a {s.N_I}-th root of {c}")
    return rep


# ----------------------------------------------------------------------
# .rg text format
# ----------------------------------------------------------------------

def _fmt_q(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _names(d):
    return [f"y{i + 1}" for i in range(d)]


def dump_graph(G: ResolutionGraph) -> str:
    y = _names(G.d)
    lines = ["# resolution graph", f"graph id={shlex.quote(G.id)}", f"ambient d={G.d}"]
    if G.f is not None:
        lines.append(f'function f="{G.f.to_string()}"')
    for e in G.divisors:
        line = f"divisor id={e.id} N={e.N} nu={e.nu} kind={e.kind}"
        if e.parents:
            line += " parents=" + ",".join(e.parents)
        lines.append(line)
    for c in G.charts:
        line = f"chart id={c.id}"
        if c.map_to_root is not None:
            line += f' map="{c.map_to_root.to_string(y)}"'
        if c.divisors_visible:
            line += ' divisors="' + ";".join(f"{i}:{eq.to_string(y)}" for i, eq in c.divisors_visible) + '"'
        lines.append(line)
    for x in G.intersections:
        line = f"intersect {x.a} {x.b}"
        if x.chart:
            line += f" chart={x.chart}"
        if x.point is not None:
            line += " point=" + ",".join(_fmt_q(c) for c in x.point)
        elif x.ideal is not None:
            line += ' point="' + ";".join(p.to_string(y) for p in x.ideal) + '"'
        lines.append(line)
    for s in G.strata:
        line = f"stratum I={','.join(s.I)} class={s.name} cover={s.N_I}"
        if s.unit is not None:
            line += f' unit="{s.unit.to_string(y)}"'
        if s.chart:
            line += f" chart={s.chart}"
        if s.ideal:
            line += ' ideal="' + ";".join(p.to_string(y) for p in s.ideal) + '"'
        lines.append(line)
    for n in G.notes:
        lines.append(f"# note: {n}")
    return "\n".join(lines) + "\n"


def _kv(tokens, lineno):
    out = {}
    for t in tokens:
        if "=" not in t:
            raise GraphFormatError(f"line {lineno}: expected key=value, got {t!r}")
        k, v = t.split("=", 1)
        out[k] = v
    return out


def _need(kv, key, lineno):
    if key not in kv:
        raise GraphFormatError(f"line {lineno}: missing {key}=")
    return kv[key]


def _int(v, lineno, key):
    try:
        return int(v)
    except ValueError:
        raise GraphFormatError(f"line {lineno}: {key} must be an integer") from None


def load_graph(text: str) -> ResolutionGraph:
    """Parse the line-oriented .rg format written by dump_graph (or by hand)."""
    d = 2
    gid, f = "G", None
    divisors, charts, inters, strata, notes = [], [], [], [], []
    pending = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("# note:"):
                notes.append(line[len("# note:"):].strip())
            continue
        try:
            toks = shlex.split(line)
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from None
        kind, rest = toks[0], toks[1:]
        if kind == "ambient":
            d = _int(_need(_kv(rest, lineno), "d", lineno), lineno, "d")
            if d < 1:
                raise GraphFormatError(f"line {lineno}: d must be positive")
        elif kind == "graph":
            gid = _need(_kv(rest, lineno), "id", lineno)
        elif kind in ("function", "divisor", "chart", "intersect", "stratum"):
            pending.append((lineno, kind, rest))
        else:
            raise GraphFormatError(f"line {lineno}: unknown record {kind!r}")
    y = _names(d)

    def poly(s, lineno, names=y):
        try:
            return parse_poly(s, d, names)
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from None

    def polys(s, lineno):
        return tuple(poly(p, lineno) for p in s.split(";"))

    for lineno, kind, rest in pending:
        if kind == "function":
            f = poly(_need(_kv(rest, lineno), "f", lineno), lineno, [f"x{i + 1}" for i in range(d)])
        elif kind == "divisor":
            kv = _kv(rest, lineno)
            parents = tuple(p for p in kv.get("parents", "").split(",") if p)
            try:
                divisors.append(DivisorRecord(
                    _need(kv, "id", lineno), _int(_need(kv, "N", lineno), lineno, "N"),
                    _int(_need(kv, "nu", lineno), lineno, "nu"), _need(kv, "kind", lineno), parents))
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: {exc}") from None
        elif kind == "chart":
            kv = _kv(rest, lineno)
            m = kv.get("map")
            sub = Substitution(polys(m, lineno)) if m else None
            if sub is not None and sub.d != d:
                raise GraphFormatError(f"line {lineno}: chart map needs {d} components")
            vis = []
            for item in filter(None, kv.get("divisors", "").split(";")):
                if ":" not in item:
                    raise GraphFormatError(f"line {lineno}: divisor entry needs id:equation")
                i, eq = item.split(":", 1)
                vis.append((i.strip(), poly(eq, lineno)))
            charts.append(Chart(_need(kv, "id", lineno), sub, tuple(vis), tuple(y)))
        elif kind == "intersect":
            if len(rest) < 2 or "=" in rest[0] or "=" in rest[1]:
                raise GraphFormatError(f"line {lineno}: intersect needs two divisor ids")
            kv = _kv(rest[2:], lineno)
            point = ideal = None
            if "point" in kv:
                pt = kv["point"]
                if ";" in pt or any(ch.isalpha() for ch in pt):
                    ideal = polys(pt, lineno)
                else:
                    try:
                        point = tuple(Fraction(c) for c in pt.split(","))
                    except ValueError:
                        raise GraphFormatError(f"line {lineno}: bad point {pt!r}") from None
                    if len(point) != d:
                        raise GraphFormatError(f"line {lineno}: point needs {d} coordinates")
            inters.append(Intersection(rest[0], rest[1], kv.get("chart"), point, ideal))
        elif kind == "stratum":
            kv = _kv(rest, lineno)
            I = tuple(_need(kv, "I", lineno).split(","))
            unit = poly(kv["unit"], lineno) if kv.get("unit") else None
            ideal = polys(kv["ideal"], lineno) if kv.get("ideal") else ()
            strata.append(Stratum(I, _int(_need(kv, "cover", lineno), lineno, "cover"),
                                  kv.get("class", stratum_name(I)), unit, kv.get("chart"), ideal))
    if not divisors:
        raise GraphFormatError("graph has no divisors")
    ids = {e.id for e in divisors}
    if len(ids) != len(divisors):
        raise GraphFormatError("duplicate divisor id")
    for x in inters:
        if x.a not in ids or x.b not in ids or x.a == x.b:
            raise GraphFormatError(f"bad intersection {x.a}-{x.b}")
    for s in strata:
        if any(i not in ids for i in s.I):
            raise GraphFormatError(f"stratum refers to unknown divisor in {s.I}")
    G = ResolutionGraph(tuple(divisors), tuple(inters), tuple(charts), tuple(strata), d, gid, f, tuple(notes))
    if not strata:
        G = covering_units(G)
    return G
