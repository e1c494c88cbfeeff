"""Sparse multivariate polynomials over the rationals.

A monomial exponent is a plain tuple of non-negative ints (a multi-index).
Terms are kept in a dict keyed by exponent tuples; the zero polynomial has
no terms.  Everything is exact (``fractions.Fraction``) and immutable.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

__all__ = [
    "Polynomial",
    "Substitution",
    "PolySyntaxError",
    "parse_poly",
    "partial_derivative",
    "taylor_coefficient",
    "substitute",
    "evaluate",
    "mi_abs",
    "mi_factorial",
    "grlex_key",
    "unit_vector",
    "divides",
]


# ----------------------------------------------------------------------
# multi-index helpers
# ----------------------------------------------------------------------

def mi_abs(alpha: Sequence[int]) -> int:
    return sum(alpha)


def mi_factorial(alpha: Sequence[int]) -> int:
    out = 1
    for a in alpha:
        out *= math.factorial(a)
    return out


def grlex_key(alpha: Sequence[int]):
    """Sort key for graded-lex: total degree first, then lexicographic."""
    return (sum(alpha), tuple(alpha))


def unit_vector(d: int, i: int) -> tuple:
    return tuple(1 if j == i else 0 for j in range(d))


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    """True if the monomial x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def _check_index(alpha, d):
    if len(alpha) != d:
        raise ValueError(f"multi-index {tuple(alpha)} has length {len(alpha)}, expected {d}")
    if any(a < 0 for a in alpha):
        raise ValueError(f"multi-index {tuple(alpha)} has a negative entry")


# ----------------------------------------------------------------------
# Polynomial
# ----------------------------------------------------------------------

class Polynomial:
    """Immutable sparse polynomial in ``d`` variables with rational coefficients."""

    __slots__ = ("_terms", "d", "_hash")

    def __init__(self, terms=None, d: int = 1):
        if d < 1:
            raise ValueError("a polynomial needs at least one variable")
        clean = {}
        if terms:
            for mon, c in terms.items():
                mon = tuple(mon)
                if len(mon) != d:
                    raise ValueError(f"exponent {mon} does not have length {d}")
                c = Fraction(c)
                if c:
                    clean[mon] = clean.get(mon, 0) + c
            clean = {m: c for m, c in clean.items() if c}
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- construction --------------------------------------------------

    @classmethod
    def _raw(cls, terms: dict, d: int) -> "Polynomial":
        # trusted constructor: terms already has tuple keys and nonzero Fractions
        obj = cls.__new__(cls)
        object.__setattr__(obj, "_terms", terms)
        object.__setattr__(obj, "d", d)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def zero(cls, d: int) -> "Polynomial":
        return cls._raw({}, d)

    @classmethod
    def constant(cls, c, d: int) -> "Polynomial":
        c = Fraction(c)
        return cls._raw({(0,) * d: c} if c else {}, d)

    @classmethod
    def monomial(cls, alpha: Sequence[int], d: int | None = None, c=1) -> "Polynomial":
        alpha = tuple(alpha)
        d = len(alpha) if d is None else d
        _check_index(alpha, d)
        c = Fraction(c)
        return cls._raw({alpha: c} if c else {}, d)

    @classmethod
    def variable(cls, i: int, d: int) -> "Polynomial":
        """The coordinate function x_{i+1} (0-based index ``i``)."""
        return cls._raw({unit_vector(d, i): Fraction(1)}, d)

    # -- inspection ----------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, alpha: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(alpha), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.d, Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term (order at the origin); -1 for zero."""
        return min((sum(m) for m in self._terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self._terms), default=-1)

    def order_in(self, i: int) -> int:
        """Largest k with x_i^k dividing self; -1 for zero."""
        return min((m[i] for m in self._terms), default=-1)

    def homogeneous_part(self, k: int) -> "Polynomial":
        return Polynomial._raw({m: c for m, c in self._terms.items() if sum(m) == k}, self.d)

    def truncate(self, k: int) -> "Polynomial":
        """Drop all terms of total degree > k."""
        return Polynomial._raw({m: c for m, c in self._terms.items() if sum(m) <= k}, self.d)

    def sorted_terms(self):
        """Terms in descending graded-lex order (the canonical order)."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self, key=grlex_key):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=key)
        return m, self._terms[m]

    def is_weighted_homogeneous(self, weights: Sequence[int]) -> bool:
        degs = {sum(w * a for w, a in zip(weights, m)) for m in self._terms}
        return len(degs) <= 1

    def content(self) -> Fraction:
        """Positive rational c with self / c having coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self._terms.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Polynomial":
        """Scale to integer coefficients with gcd 1 and positive grlex-leading coefficient."""
        if not self._terms:
            return self
        c = self.content()
        _, lc = self.leading_term()
        if lc < 0:
            c = -c
        return Polynomial._raw({m: v / c for m, v in self._terms.items()}, self.d)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.d != self.d:
                raise ValueError(f"dimension mismatch: {self.d} vs {other.d}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.d)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(out, self.d)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()}, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._raw({m: c for m, c in out.items() if c}, self.d)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.d)
        return Polynomial._raw({m: v * c for m, v in self._terms.items()}, self.d)

    def mul_monomial(self, alpha: Sequence[int], c=1) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.d)
        return Polynomial._raw(
            {tuple(a + b for a, b in zip(m, alpha)): v * c for m, v in self._terms.items()},
            self.d,
        )

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(1, self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, c):
        if isinstance(c, Polynomial):
            return self.exact_div(c)
        return self.scale(1 / Fraction(c))

    def divmod_monomial(self, alpha: Sequence[int]):
        """Split self = x^alpha * q + r with no term of r divisible by x^alpha."""
        q, r = {}, {}
        for m, c in self._terms.items():
            if divides(alpha, m):
                q[tuple(a - b for a, b in zip(m, alpha))] = c
            else:
                r[m] = c
        return Polynomial._raw(q, self.d), Polynomial._raw(r, self.d)

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient self / other; raises ArithmeticError if other does not divide self."""
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    def divmod(self, other: "Polynomial"):
        """Multivariate division by a single polynomial in graded-lex order."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        lm, lc = other.leading_term()
        rest = dict(self._terms)
        q: dict = {}
        r: dict = {}
        while rest:
            m = max(rest, key=grlex_key)
            c = rest.pop(m)
            if divides(lm, m):
                shift = tuple(a - b for a, b in zip(m, lm))
                f = c / lc
                q[shift] = q.get(shift, 0) + f
                for om, oc in other._terms.items():
                    if om == lm:
                        continue
                    t = tuple(a + b for a, b in zip(om, shift))
                    v = rest.get(t, 0) - f * oc
                    if v:
                        rest[t] = v
                    else:
                        rest.pop(t, None)
            else:
                r[m] = c
        return (Polynomial._raw({m: c for m, c in q.items() if c}, self.d),
                Polynomial._raw(r, self.d))

    def divisible_by(self, other: "Polynomial") -> bool:
        return not self.divmod(other)[1]

    def multiplicity_of(self, factor: "Polynomial") -> int:
        """Largest e with factor**e dividing self (self nonzero, factor nonconstant)."""
        if not self:
            raise ValueError("zero polynomial is divisible by every power")
        if factor.is_constant():
            raise ValueError("factor must be nonconstant")
        e, cur = 0, self
        while True:
            q, r = cur.divmod(factor)
            if r:
                return e
            e, cur = e + 1, q

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.d)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.d == other.d and self._terms == other._terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.d, frozenset(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- calculus ------------------------------------------------------

    def diff(self, i: int, k: int = 1) -> "Polynomial":
        """k-th partial derivative in variable i (0-based)."""
        out = {}
        for m, c in self._terms.items():
            if m[i] < k:
                continue
            f = math.perm(m[i], k)
            nm = m[:i] + (m[i] - k,) + m[i + 1:]
            out[nm] = c * f
        return Polynomial._raw(out, self.d)

    def __call__(self, *point):
        return evaluate(self, point)

    # -- printing ------------------------------------------------------

    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = _default_names(self.d) if names is None else list(names)
        if not self._terms:
            return "0"
        pieces = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e
            )
            a = abs(c)
            if not mono:
                body = _fmt_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt_rational(a)}*{mono}"
            if k == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(("- " if c < 0 else "+ ") + body)
        return " ".join(pieces)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r}, d={self.d})"


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _default_names(d: int, prefix: str = "x") -> list:
    return [f"{prefix}{i + 1}" for i in range(d)]


# ----------------------------------------------------------------------
# Substitution
# ----------------------------------------------------------------------

class Substitution:
    """Variable i -> images[i].  Images live in a ring with ``target_d`` variables."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[Polynomial]):
        images = tuple(images)
        if not images:
            raise ValueError("a substitution needs at least one image")
        td = images[0].d
        if any(p.d != td for p in images):
            raise ValueError("all images must live in the same ring")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Substitution is immutable")

    @classmethod
    def identity(cls, d: int) -> "Substitution":
        return cls([Polynomial.variable(i, d) for i in range(d)])

    @property
    def d(self) -> int:
        return len(self.images)

    @property
    def target_d(self) -> int:
        return self.images[0].d

    def __call__(self, f: Polynomial) -> Polynomial:
        return substitute(f, self)

    def compose(self, inner: "Substitution") -> "Substitution":
        """The substitution f -> (f o self) o inner, i.e. apply self first."""
        return Substitution([substitute(p, inner) for p in self.images])

    def fixes_origin(self) -> bool:
        return all(not p.constant_term() for p in self.images)

    def linear_part(self) -> list:
        """Jacobian matrix at the origin as rows of Fractions."""
        td = self.target_d
        return [[p.coefficient(unit_vector(td, j)) for j in range(td)] for p in self.images]

    def __eq__(self, other):
        return isinstance(other, Substitution) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def to_string(self, names=None) -> str:
        return ";".join(p.to_string(names) for p in self.images)

    def __repr__(self):
        return f"Substitution({self.to_string()!r})"


# ----------------------------------------------------------------------
# operations
# ----------------------------------------------------------------------

def partial_derivative(f: Polynomial, alpha: Sequence[int]) -> Polynomial:
    """The iterated partial derivative d^|alpha| f / dx^alpha."""
    alpha = tuple(alpha)
    _check_index(alpha, f.d)
    out = {}
    for m, c in f.items():
        if not divides(alpha, m):
            continue
        k = 1
        for e, a in zip(m, alpha):
            k *= math.perm(e, a)
        out[tuple(e - a for e, a in zip(m, alpha))] = c * k
    return Polynomial._raw(out, f.d)


def taylor_coefficient(f: Polynomial, alpha: Sequence[int]) -> Polynomial:
    """d^alpha f / alpha!  (binomial coefficients instead of falling factorials)."""
    alpha = tuple(alpha)
    _check_index(alpha, f.d)
    out = {}
    for m, c in f.items():
        if not divides(alpha, m):
            continue
        k = 1
        for e, a in zip(m, alpha):
            k *= math.comb(e, a)
        out[tuple(e - a for e, a in zip(m, alpha))] = c * k
    return Polynomial._raw(out, f.d)


def substitute(f: Polynomial, sigma: Substitution) -> Polynomial:
    """Replace variable i of f by sigma.images[i] and expand."""
    if sigma.d != f.d:
        raise ValueError(f"substitution has {sigma.d} images, polynomial has {f.d} variables")
    td = sigma.target_d
    powers: list[dict] = [{0: Polynomial.constant(1, td)} for _ in range(f.d)]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            k = max(cache)
            p = cache[k]
            while k < e:
                p = p * sigma.images[i]
                k += 1
                cache[k] = p
        return cache[e]

    acc: dict = {}
    for m, c in f.items():
        term = Polynomial.constant(c, td)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        for tm, tc in term.items():
            v = acc.get(tm, 0) + tc
            if v:
                acc[tm] = v
            else:
                acc.pop(tm, None)
    return Polynomial._raw(acc, td)


def evaluate(f: Polynomial, point: Sequence) -> Fraction:
    point = [Fraction(p) for p in point]
    if len(point) != f.d:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {f.d} variables")
    total = Fraction(0)
    for m, c in f.items():
        v = c
        for p, e in zip(point, m):
            if e:
                v *= p ** e
        total += v
    return total


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

class PolySyntaxError(ValueError):
    """Malformed polynomial text; ``pos`` is the 0-based offset of the problem."""

    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.pos = pos
        self.text = text


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise PolySyntaxError(f"unexpected character {ch!r}", text, start)
            toks.append((ch, ch, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, names):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.index = {name: k for k, name in enumerate(names)}
        self.d = len(names)

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            raise PolySyntaxError(f"expected {want}", self.text, tok[2])
        self.i += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[0] == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        if self.peek()[0] == "-":
            self.take()
            return -self.factor()
        value = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                raise PolySyntaxError("exponent must be a non-negative integer", self.text, tok[2])
            self.take()
            value = value ** tok[1]
        return value

    def base(self):
        tok = self.peek()
        kind = tok[0]
        if kind == "int":
            self.take()
            num = tok[1]
            if self.peek()[0] == "/":
                self.take()
                den_tok = self.peek()
                if den_tok[0] != "int":
                    raise PolySyntaxError("expected denominator", self.text, den_tok[2])
                self.take()
                if den_tok[1] == 0:
                    raise PolySyntaxError("zero denominator", self.text, den_tok[2])
                return Polynomial.constant(Fraction(num, den_tok[1]), self.d)
            return Polynomial.constant(num, self.d)
        if kind == "name":
            self.take()
            if tok[1] not in self.index:
                raise PolySyntaxError(f"unknown variable {tok[1]!r}", self.text, tok[2])
            return Polynomial.variable(self.index[tok[1]], self.d)
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        if kind == "end":
            raise PolySyntaxError("unexpected end of input", self.text, tok[2])
        raise PolySyntaxError(f"unexpected token {tok[1]!r}", self.text, tok[2])


def parse_poly(text: str, d: int, names: Sequence[str] | None = None, prefix: str = "x") -> Polynomial:
    """Parse ``text`` as a polynomial in variables ``x1..xd`` (or ``names``).

    Multiplication needs an explicit ``*`` and powers use ``^``; rational
    constants are written ``p/q``.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    names = _default_names(d, prefix) if names is None else list(names)
    if len(names) != d:
        raise ValueError("need exactly d variable names")
    p = _Parser(text, names)
    value = p.expr()
    p.take("end")
    return value
