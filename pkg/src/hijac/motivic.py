"""Formal Grothendieck-ring values, the contact locus and zeta formulas.

Class symbols are free generators: two values are equal when their normal
forms agree.  This is exactly what the formula-level comparisons need, but
it is not a decision procedure for the actual ring of varieties.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .groebner import groebner_basis, membership, standard_basis
from .jacobian import IdealGens, jacobian_ideal
from .poly import Polynomial
from .report import NOT_APPLICABLE, PASS, FAIL, Report
from .resolve import ResolutionGraph, compare_coverings, resolve_curve, stratum_name

__all__ = [
    "ClassSymbol",
    "ONE",
    "GroVal",
    "RationalSeries",
    "IncomparableSymbols",
    "symbol_of",
    "compositions",
    "contact_locus_class",
    "zeta",
    "expand",
    "limit_T_infinity",
    "nearby_cycle",
    "nearby_cycle_closed_form",
    "check_separating_specialization",
    "gro_equal",
    "compare_pipeline",
]


class IncomparableSymbols(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ClassSymbol:
    """[E~_I°] for a stratum I of a given resolution graph."""

    stratum: tuple
    cover_degree: int = 1
    action_order: int = 1
    origin: str = ""

    @property
    def is_one(self) -> bool:
        return not self.stratum

    def __str__(self):
        return "1" if self.is_one else "[" + stratum_name(self.stratum) + "]"


ONE = ClassSymbol(())


def _lpoly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _l_minus_one_pow(k: int, sign: int = 1) -> dict:
    """(L - 1)^k as {exponent: coefficient}; sign=-1 gives (1 - L)^k."""
    out = {0: 1}
    base = {1: 1, 0: -1} if sign > 0 else {0: 1, 1: -1}
    for _ in range(k):
        out = _lpoly_mul(out, base)
    return out


class GroVal:
    """Finite sum of coeff * L^e * [symbol] with integer coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        t: dict = {}
        for (sym, e), c in dict(terms or {}).items():
            if c:
                t[(sym, int(e))] = t.get((sym, int(e)), 0) + int(c)
        self._terms = {k: v for k, v in t.items() if v}

    @classmethod
    def zero(cls) -> "GroVal":
        return cls()

    @classmethod
    def one(cls) -> "GroVal":
        return cls({(ONE, 0): 1})

    @classmethod
    def L(cls, p: int = 1) -> "GroVal":
        return cls({(ONE, p): 1})

    @classmethod
    def symbol(cls, sym: ClassSymbol, lpoly: dict | None = None) -> "GroVal":
        return cls({(sym, e): c for e, c in (lpoly or {0: 1}).items()})

    def terms(self) -> list:
        return sorted(((s, e, c) for (s, e), c in self._terms.items()), key=lambda t: (t[0], t[1]))

    def symbols(self) -> set:
        return {s for s, _ in self._terms}

    def origins(self) -> set:
        return {s.origin for s in self.symbols() if not s.is_one}

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return GroVal(out)

    def __neg__(self):
        return GroVal({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "GroVal":
        return GroVal({k: c * v for k, v in self._terms.items()})

    def mul_L(self, p: int) -> "GroVal":
        return GroVal({(s, e + p): c for (s, e), c in self._terms.items()})

    def mul_lpoly(self, lpoly: dict) -> "GroVal":
        out: dict = {}
        for (s, e), c in self._terms.items():
            for e2, c2 in lpoly.items():
                out[(s, e + e2)] = out.get((s, e + e2), 0) + c * c2
        return GroVal(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        a, b = self, other
        if a.symbols() - {ONE} and b.symbols() - {ONE}:
            raise ValueError("products of two stratum classes are not modelled")
        if a.symbols() - {ONE}:
            a, b = b, a
        # a is a polynomial in L
        return b.mul_lpoly({e: c for (_, e), c in a._terms.items()})

    __rmul__ = __mul__

    def relabel(self, origins: dict) -> "GroVal":
        out = {}
        for (s, e), c in self._terms.items():
            if s.origin in origins:
                s = ClassSymbol(s.stratum, s.cover_degree, s.action_order, origins[s.origin])
            out[(s, e)] = out.get((s, e), 0) + c
        return GroVal(out)

    def __eq__(self, other):
        if not isinstance(other, GroVal):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def to_string(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for s, e, c in self.terms():
            factors = []
            if e == 1:
                factors.append("L")
            elif e:
                factors.append(f"L^{e}")
            if not s.is_one:
                factors.append(str(s))
            body = "*".join(factors)
            mag = abs(c)
            if not body:
                body = str(mag)
            elif mag != 1:
                body = f"{mag}*{body}"
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    __str__ = to_string

    def __repr__(self):
        return f"GroVal({self.to_string()})"


@dataclass(frozen=True)
class RationalSeries:
    """sum c * prod L^p T^q / (1 - L^p T^q) plus a constant."""

    terms: tuple = ()  # ((GroVal, ((p, q), ...)), ...)
    constant: GroVal = GroVal()

    def __post_init__(self):
        for _, factors in self.terms:
            for p, q in factors:
                if q < 1:
                    raise ValueError("every factor needs q >= 1")

    def __add__(self, other):
        return RationalSeries(self.terms + other.terms, self.constant + other.constant)

    def relabel(self, origins: dict) -> "RationalSeries":
        return RationalSeries(tuple((c.relabel(origins), f) for c, f in self.terms),
                              self.constant.relabel(origins))

    def normalized(self) -> tuple:
        """Merge terms with identical factor multisets (for comparisons)."""
        acc: dict = {}
        for c, factors in self.terms:
            key = tuple(sorted(factors))
            acc[key] = acc.get(key, GroVal()) + c
        return tuple(sorted((k, v) for k, v in acc.items() if v)), self.constant

    def to_lines(self) -> list:
        lines = []
        for c, factors in self.terms:
            fs = "*".join(f"F({p},{q})" for p, q in factors)
            lines.append(f"({c})*{fs}" if fs else f"({c})")
        if self.constant:
            lines.append(f"({self.constant})")
        return lines

    def __str__(self):
        return " + ".join(self.to_lines()) or "0"


# ----------------------------------------------------------------------
# the formulas
# ----------------------------------------------------------------------

def symbol_of(G: ResolutionGraph, stratum) -> ClassSymbol:
    return ClassSymbol(tuple(stratum.I), stratum.N_I, stratum.N_I, G.id)


def compositions(weights: Sequence[int], total: int) -> Iterable[tuple]:
    """All k with k_i >= 1 and sum k_i * weights_i == total."""
    weights = list(weights)
    if not weights:
        if total == 0:
            yield ()
        return
    w, rest = weights[0], weights[1:]
    floor = sum(rest)
    k = 1
    while k * w + floor <= total:
        for tail in compositions(rest, total - k * w):
            yield (k,) + tail
        k += 1


def _strata(G: ResolutionGraph):
    if not G.strata:
        raise ValueError("graph has no strata; run covering_units first")
    return G.strata


def contact_locus_class(G: ResolutionGraph, m: int, d: int) -> GroVal:
    """[X_m] = L^{md} sum_I (L-1)^{|I|-1} [E~_I°] sum_k L^{-sum k_i nu_i}."""
    if m < 1:
        raise ValueError("m must be at least 1")
    total = GroVal()
    for s in _strata(G):
        divs = [G.divisor(i) for i in s.I]
        inner: dict = {}
        for k in compositions([e.N for e in divs], m):
            e = -sum(ki * dv.nu for ki, dv in zip(k, divs))
            inner[e] = inner.get(e, 0) + 1
        if not inner:
            continue
        coeff = _lpoly_mul(_l_minus_one_pow(len(s.I) - 1), inner)
        total = total + GroVal.symbol(symbol_of(G, s), coeff)
    return total.mul_L(m * d)


def zeta(G: ResolutionGraph, d: int = 2) -> RationalSeries:
    """Motivic zeta function as a rational series, one term per stratum."""
    terms = []
    for s in _strata(G):
        c = GroVal.symbol(symbol_of(G, s), _l_minus_one_pow(len(s.I) - 1))
        factors = tuple((-G.divisor(i).nu, G.divisor(i).N) for i in s.I)
        terms.append((c, factors))
    return RationalSeries(tuple(terms))


def expand(Z: RationalSeries, M: int, d: int | None = None) -> list:
    """Coefficients of T^1..T^M; multiplied by L^{dm} when d is given."""
    if M < 0:
        raise ValueError("M must be non-negative")
    out = []
    for m in range(1, M + 1):
        acc = GroVal()
        for c, factors in Z.terms:
            lp: dict = {}
            for k in compositions([q for _, q in factors], m):
                e = sum(ki * p for ki, (p, _) in zip(k, factors))
                lp[e] = lp.get(e, 0) + 1
            if lp:
                acc = acc + c.mul_lpoly(lp)
        out.append(acc.mul_L(d * m) if d is not None else acc)
    return out


def limit_T_infinity(Z: RationalSeries) -> GroVal:
    """Each factor L^p T^q / (1 - L^p T^q) tends to -1."""
    total = Z.constant
    for c, factors in Z.terms:
        total = total + (c if len(factors) % 2 == 0 else -c)
    return total


def nearby_cycle_closed_form(G: ResolutionGraph) -> GroVal:
    total = GroVal()
    for s in _strata(G):
        total = total + GroVal.symbol(symbol_of(G, s), _l_minus_one_pow(len(s.I) - 1, sign=-1))
    return total


def nearby_cycle(G: ResolutionGraph, d: int = 2) -> GroVal:
    """S_f = -lim zeta, cross-checked against the closed form."""
    via_limit = -limit_T_infinity(zeta(G, d))
    closed = nearby_cycle_closed_form(G)
    if via_limit != closed:
        raise ArithmeticError(f"nearby cycle mismatch: {via_limit} vs {closed}")
    return via_limit


def check_separating_specialization(G: ResolutionGraph, m: int, d: int) -> Report:
    rep = Report(f"separating specialization (m={m})")
    if not G.is_m_separating(m):
        rep.add(f"graph is {m}-separating", NOT_APPLICABLE, "some meeting pair has N_i + N_j <= m")
        return rep
    rep.add(f"graph is {m}-separating", PASS)
    multi = [s for s in _strata(G) if len(s.I) >= 2
             and any(True for _ in compositions([G.divisor(i).N for i in s.I], m))]
    rep.add("strata with |I| >= 2 contribute nothing", not multi,
            ", ".join(s.name for s in multi))
    special = GroVal()
    contributing = []
    for s in _strata(G):
        if len(s.I) != 1:
            continue
        e = G.divisor(s.I[0])
        if m % e.N == 0:
            contributing.append(e.id)
            special = special + GroVal.symbol(symbol_of(G, s), {-(m * e.nu) // e.N: 1})
    special = special.mul_L(m * d)
    general = contact_locus_class(G, m, d)
    rep.add("general formula equals single-divisor formula", general == special,
            f"contributing divisors: {', '.join(contributing) or 'none'}")
    rep.data["contributing"] = contributing
    return rep


def gro_equal(a: GroVal, b: GroVal, certificate: Report | None = None) -> bool:
    """Normal-form equality; symbols of two graphs need a passed covering comparison."""
    origins = a.origins() | b.origins()
    if len(origins) <= 1:
        return a == b
    if certificate is None or not certificate.passed or "graphs" not in certificate.data:
        raise IncomparableSymbols(f"symbols from different graphs {sorted(origins)} without a certificate")
    first, second = certificate.data["graphs"]
    if not origins <= {first, second}:
        raise IncomparableSymbols(f"certificate covers {first}, {second} but symbols come from {sorted(origins)}")
    ren = {second: first}
    return a.relabel(ren) == b.relabel(ren)


def _certified(Gf: ResolutionGraph, Gg: ResolutionGraph) -> Report:
    rep = compare_coverings(Gf, Gg)
    rep.data["graphs"] = (Gf.id, Gg.id)
    return rep


def compare_pipeline(f: Polynomial, g: Polynomial, m_max: int = 6, n: int = 2) -> Report:
    """g - f in J_n(f), shared resolution, covering comparison and [X_m] equality."""
    d = f.d
    rep = Report(f"contact-locus comparison (n={n}, m<={m_max})")
    J = jacobian_ideal(f, n)
    diff = g - f
    inside = membership(diff, groebner_basis(J))
    how = "global Groebner basis"
    if not inside:
        inside = membership(diff, standard_basis(J))
        how = "local standard basis"
    rep.add(f"g - f in J_{n}(f)", inside, how, None if inside else diff)
    Gf = resolve_curve(f, "f")
    Gg = resolve_curve(g, "g")
    cert = _certified(Gf, Gg)
    for c in cert.checks:
        rep.add(f"coverings: {c.name}", c.status, c.detail, c.offending)
    rep.data["certificate"] = cert.to_dict()
    if not cert.passed:
        return rep
    for m in range(1, m_max + 1):
        a, b = contact_locus_class(Gf, m, d), contact_locus_class(Gg, m, d)
        rep.add(f"[X_{m}(f)] = [X_{m}(g)]", gro_equal(a, b, cert), str(a))
    ren = {"g": "f"}
    rep.add("zeta series coincide",
            zeta(Gf, d).normalized() == zeta(Gg, d).relabel(ren).normalized())
    return rep
