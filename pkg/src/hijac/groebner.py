"""Groebner bases (global orders) and Mora standard bases (local order).

The local order realises computations in the localisation of Q[x] at the
origin.  Ideal equality/membership for polynomial data decided there agrees
with the answer in convergent or formal power series, because those rings
are faithfully flat over the localisation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as _cartesian
from typing import Sequence

from .jacobian import IdealGens
from .poly import Polynomial, Substitution, divides, substitute

__all__ = [
    "MonomialOrder",
    "OrderedIdeal",
    "LocalQuotient",
    "INFINITE",
    "groebner_basis",
    "standard_basis",
    "normal_form",
    "membership",
    "ideal_equal",
    "ideal_sum",
    "ideal_product",
    "ideal_power",
    "local_dimension",
    "global_dimension",
    "apply_automorphism",
    "s_polynomial",
]


class MonomialOrder(enum.Enum):
    GRADED_LEX = "grlex"
    GRADED_REVLEX = "grevlex"
    LEX = "lex"
    LOCAL_GRADED = "local"

    @property
    def is_local(self) -> bool:
        return self is MonomialOrder.LOCAL_GRADED

    def key(self, m):
        """Larger key means larger monomial."""
        if self is MonomialOrder.GRADED_LEX:
            return (sum(m), m)
        if self is MonomialOrder.GRADED_REVLEX:
            return (sum(m), tuple(-a for a in reversed(m)))
        if self is MonomialOrder.LEX:
            return m
        return (-sum(m), tuple(-a for a in reversed(m)))


class _Infinite:
    __slots__ = ()

    def __repr__(self):
        return "INFINITE"

    __str__ = __repr__


INFINITE = _Infinite()


# ----------------------------------------------------------------------
# internal polynomial helpers on raw term dicts
# ----------------------------------------------------------------------

@dataclass
class _Elt:
    terms: dict
    lm: tuple
    lc: Fraction
    ecart: int = 0


def _make(terms: dict, key, monic=True) -> _Elt:
    lm = max(terms, key=key)
    lc = terms[lm]
    if monic and lc != 1:
        terms = {m: c / lc for m, c in terms.items()}
        lc = Fraction(1)
    ecart = max(sum(m) for m in terms) - sum(lm)
    return _Elt(terms, lm, lc, ecart)


def _sub_multiple(p: dict, g: _Elt, shift, factor):
    # p -= factor * x^shift * g   (in place)
    for m, c in g.terms.items():
        t = tuple(a + b for a, b in zip(m, shift))
        v = p.get(t, 0) - factor * c
        if v:
            p[t] = v
        else:
            p.pop(t, None)


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _spoly_terms(f: _Elt, g: _Elt) -> dict:
    L = _lcm(f.lm, g.lm)
    sf = tuple(a - b for a, b in zip(L, f.lm))
    sg = tuple(a - b for a, b in zip(L, g.lm))
    out = {}
    for m, c in f.terms.items():
        out[tuple(a + b for a, b in zip(m, sf))] = c / f.lc
    _sub_multiple(out, g, sg, 1 / g.lc)
    return out


def _reduce_full(p: dict, G: Sequence[_Elt], key) -> dict:
    """Complete reduction of p by G (global orders only)."""
    p = dict(p)
    r = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for g in G:
            if divides(g.lm, m):
                shift = tuple(a - b for a, b in zip(m, g.lm))
                _sub_multiple(p, g, shift, c / g.lc)
                break
        else:
            r[m] = c
            del p[m]
    return r


def _drop_above(h: dict, corner):
    if corner is not None:
        for m in [m for m in h if sum(m) >= corner]:
            del h[m]


def _corner(lms: Sequence[tuple], d: int):
    """Smallest D with every monomial of degree D divisible by some lm, or None."""
    q = _standard_monomials(lms, d)
    if q.dimension is INFINITE:
        return None
    return max((sum(m) for m in q.basis), default=-1) + 1


def _mora_nf(p: dict, G: Sequence[_Elt], key, corner=None) -> dict:
    """Mora's weak normal form with ecart-based choice of reducer.

    Returns 0 (empty dict) iff p lies in the ideal generated by G in the
    localisation, provided G is a standard basis.  When the maximal ideal
    to the power ``corner`` is known to lie in the ideal, terms of that
    degree and above are discarded on the fly.
    """
    h = dict(p)
    _drop_above(h, corner)
    T = list(G)
    while h:
        lm = max(h, key=key)
        best = None
        for idx, g in enumerate(T):
            if divides(g.lm, lm):
                if best is None or g.ecart < best[0]:
                    best = (g.ecart, idx, g)
        if best is None:
            return h
        g = best[2]
        eh = max(sum(m) for m in h) - sum(lm)
        if g.ecart > eh:
            T.append(_Elt(dict(h), lm, h[lm], eh))
        shift = tuple(a - b for a, b in zip(lm, g.lm))
        _sub_multiple(h, g, shift, h[lm] / g.lc)
        _drop_above(h, corner)
    return h


# ----------------------------------------------------------------------
# basis computation
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class OrderedIdeal:
    gens: IdealGens
    order: MonomialOrder
    basis: tuple  # of Polynomial, monic w.r.t. order
    _elts: tuple = field(repr=False, compare=False, default=())
    corner: int | None = None  # local only: m^corner lies in the ideal

    @property
    def d(self) -> int:
        return self.gens.d

    def leading_monomials(self) -> list:
        return [e.lm for e in self._elts]

    def is_unit(self) -> bool:
        return any(not any(e.lm) for e in self._elts)

    def contains(self, f: Polynomial) -> bool:
        return membership(f, self)

    def __repr__(self):
        return f"OrderedIdeal({self.order.value}: " + ", ".join(map(str, self.basis)) + ")"


def _pairs_update(G, pairs, new_idx, key):
    # Buchberger criteria: skip coprime leading monomials; Gebauer-Moeller style
    # chain pruning of old pairs whose lcm is divisible by the new leading monomial.
    lm_new = G[new_idx].lm
    kept = set()
    for (i, j) in pairs:
        L = _lcm(G[i].lm, G[j].lm)
        if (divides(lm_new, L) and _lcm(G[i].lm, lm_new) != L and _lcm(G[j].lm, lm_new) != L):
            continue
        kept.add((i, j))
    cand = {}
    for i in range(new_idx):
        L = _lcm(G[i].lm, lm_new)
        cand.setdefault(L, []).append(i)
    # keep one pair per lcm, and only lcms minimal w.r.t. divisibility
    lcms = sorted(cand, key=lambda m: (sum(m), key(m)))
    minimal = []
    for L in lcms:
        if not any(divides(M, L) for M in minimal):
            minimal.append(L)
    for L in minimal:
        idxs = cand[L]
        if any(tuple(a + b for a, b in zip(G[i].lm, lm_new)) == L for i in idxs):
            continue  # product criterion
        kept.add((min(idxs), new_idx))
    return kept


def _select(G, pairs, key):
    def k(p):
        L = _lcm(G[p[0]].lm, G[p[1]].lm)
        return (sum(L), key(L), p)

    return min(pairs, key=k)


def groebner_basis(I: IdealGens, order: MonomialOrder = MonomialOrder.GRADED_REVLEX) -> OrderedIdeal:
    """Reduced Groebner basis with the normal selection strategy."""
    order = MonomialOrder(order)
    if order.is_local:
        raise ValueError("local order has no Groebner basis; use standard_basis")
    key = order.key
    G: list = []
    pairs: set = set()
    for g in I.gens:
        r = _reduce_full(g._terms, G, key)
        if not r:
            continue
        G.append(_make(r, key))
        pairs = _pairs_update(G, pairs, len(G) - 1, key)
    while pairs:
        p = _select(G, pairs, key)
        pairs.discard(p)
        s = _spoly_terms(G[p[0]], G[p[1]])
        r = _reduce_full(s, G, key)
        if r:
            G.append(_make(r, key))
            pairs = _pairs_update(G, pairs, len(G) - 1, key)
    return _finish_global(I, order, G)


def _finish_global(I, order, G) -> OrderedIdeal:
    key = order.key
    G = sorted(G, key=lambda e: key(e.lm))
    minimal: list = []
    for e in G:
        if not any(divides(m.lm, e.lm) for m in minimal):
            minimal.append(e)
    reduced = []
    for i, e in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = {m: c for m, c in e.terms.items() if m != e.lm}
        tail = _reduce_full(tail, others, key)
        tail[e.lm] = Fraction(1)
        reduced.append(_make(tail, key))
    reduced.sort(key=lambda e: key(e.lm), reverse=True)
    basis = tuple(Polynomial._raw(dict(e.terms), I.d) for e in reduced)
    return OrderedIdeal(I, order, basis, tuple(reduced))


def standard_basis(I: IdealGens) -> OrderedIdeal:
    """Standard basis for the local degree order via Mora's tangent cone algorithm."""
    order = MonomialOrder.LOCAL_GRADED
    key = order.key
    S: list = []
    pairs: set = set()
    for g in I.gens:
        S.append(_make(dict(g._terms), key))
        pairs = _pairs_update(S, pairs, len(S) - 1, key)
        if not any(S[-1].lm):
            return _unit_local(I)
    corner = _corner([e.lm for e in S], I.d)
    while pairs:
        p = _select(S, pairs, key)
        pairs.discard(p)
        s = _spoly_terms(S[p[0]], S[p[1]])
        h = _mora_nf(s, S, key, corner)
        if h:
            e = _make(h, key)
            if not any(e.lm):
                return _unit_local(I)
            S.append(e)
            pairs = _pairs_update(S, pairs, len(S) - 1, key)
            c = _corner([x.lm for x in S], I.d)
            if c is not None and (corner is None or c < corner):
                corner = c
                for x in S:
                    if sum(x.lm) >= corner:
                        x.terms = {x.lm: x.lc}
                    else:
                        _drop_above(x.terms, corner)
                    x.ecart = max(sum(m) for m in x.terms) - sum(x.lm)
    # drop elements whose leading monomial is redundant
    keep: list = []
    for e in sorted(S, key=lambda e: (sum(e.lm), key(e.lm), e.ecart)):
        if not any(divides(k.lm, e.lm) for k in keep):
            keep.append(e)
    keep.sort(key=lambda e: key(e.lm), reverse=True)
    basis = tuple(Polynomial._raw(dict(e.terms), I.d) for e in keep)
    return OrderedIdeal(I, order, basis, tuple(keep), corner)


def _unit_local(I):
    one = _Elt({(0,) * I.d: Fraction(1)}, (0,) * I.d, Fraction(1), 0)
    return OrderedIdeal(I, MonomialOrder.LOCAL_GRADED, (Polynomial.constant(1, I.d),), (one,))


def compute_basis(I: IdealGens, order: MonomialOrder) -> OrderedIdeal:
    order = MonomialOrder(order)
    return standard_basis(I) if order.is_local else groebner_basis(I, order)


# ----------------------------------------------------------------------
# decisions
# ----------------------------------------------------------------------

def normal_form(f: Polynomial, I: OrderedIdeal) -> Polynomial:
    """Normal form of f (complete reduction for global orders, Mora's weak form for the local one)."""
    if f.d != I.d:
        raise ValueError("dimension mismatch")
    key = I.order.key
    if I.order.is_local:
        r = _mora_nf(f._terms, I._elts, key, I.corner)
    else:
        r = _reduce_full(f._terms, I._elts, key)
    return Polynomial._raw(r, f.d)


def membership(f: Polynomial, I: OrderedIdeal) -> bool:
    if not f:
        return True
    if I.is_unit():
        return True
    return not normal_form(f, I)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    key = MonomialOrder(order).key
    return Polynomial._raw(_spoly_terms(_make(dict(f._terms), key, monic=False),
                                        _make(dict(g._terms), key, monic=False)), f.d)


def ideal_equal(I: IdealGens, J: IdealGens, order: MonomialOrder = MonomialOrder.GRADED_REVLEX) -> bool:
    if I.d != J.d:
        raise ValueError("ideals live in different rings")
    order = MonomialOrder(order)
    BI = compute_basis(I, order)
    BJ = compute_basis(J, order)
    if not order.is_local:
        return BI.basis == BJ.basis
    return all(membership(g, BJ) for g in I.gens) and all(membership(g, BI) for g in J.gens)


def ideal_sum(I: IdealGens, J: IdealGens) -> IdealGens:
    if I.d != J.d:
        raise ValueError("ideals live in different rings")
    return IdealGens(list(I.gens) + list(J.gens), I.d)


def ideal_product(I: IdealGens, J: IdealGens) -> IdealGens:
    if I.d != J.d:
        raise ValueError("ideals live in different rings")
    return IdealGens([a * b for a in I.gens for b in J.gens], I.d)


def ideal_power(I: IdealGens, k: int) -> IdealGens:
    if k < 0:
        raise ValueError("ideal power needs k >= 0")
    out = IdealGens.unit(I.d)
    for _ in range(k):
        out = ideal_product(out, I)
    return out


def apply_automorphism(I: IdealGens, sigma: Substitution) -> IdealGens:
    """Generator-wise substitution x -> sigma(x)."""
    return IdealGens([substitute(g, sigma) for g in I.gens], sigma.target_d)


# ----------------------------------------------------------------------
# quotient dimensions
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class LocalQuotient:
    dimension: object  # int or INFINITE
    basis: tuple  # standard monomials (exponent tuples) when finite

    @property
    def finite(self) -> bool:
        return self.dimension is not INFINITE


def _standard_monomials(lms: Sequence[tuple], d: int) -> LocalQuotient:
    if any(not any(m) for m in lms):
        return LocalQuotient(0, ())
    bounds = []
    for i in range(d):
        pure = [m[i] for m in lms if m[i] and all(m[j] == 0 for j in range(d) if j != i)]
        if not pure:
            return LocalQuotient(INFINITE, ())
        bounds.append(min(pure))
    mons = [
        m for m in _cartesian(*(range(b) for b in bounds))
        if not any(divides(l, m) for l in lms)
    ]
    mons.sort(key=lambda m: (sum(m), tuple(-a for a in m)))
    return LocalQuotient(len(mons), tuple(mons))


def local_dimension(I: IdealGens) -> LocalQuotient:
    """Dimension of Q[x]_<x> / I and its standard monomials."""
    B = standard_basis(I)
    return _standard_monomials(B.leading_monomials(), I.d)


def global_dimension(I: IdealGens, order: MonomialOrder = MonomialOrder.GRADED_REVLEX) -> LocalQuotient:
    """Dimension of Q[x] / I (all points, not just the origin)."""
    B = groebner_basis(I, order)
    if not B.basis:
        return LocalQuotient(INFINITE, ())
    return _standard_monomials(B.leading_monomials(), I.d)
