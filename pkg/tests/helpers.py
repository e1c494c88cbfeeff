"""Shared generators and sympy bridges for the test suite."""

import random
from fractions import Fraction

import sympy

from hijac.poly import Polynomial


def random_poly(rng: random.Random, d: int, deg: int = 4, nterms: int = 4, origin=True):
    """A nonconstant polynomial with small rational coefficients."""
    while True:
        terms = {}
        for _ in range(nterms):
            k = rng.randint(1, deg)
            alpha = [0] * d
            for _ in range(k):
                alpha[rng.randrange(d)] += 1
            terms[tuple(alpha)] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
        if not origin:
            terms[(0,) * d] = Fraction(rng.randint(-2, 2))
        p = Polynomial(terms, d)
        if not p.is_constant():
            return p


def syms(d):
    return sympy.symbols(f"x1:{d + 1}")


def to_sympy(p: Polynomial):
    xs = syms(p.d)
    out = sympy.Integer(0)
    for m, c in p.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for x, e in zip(xs, m):
            term *= x ** e
        out += term
    return sympy.expand(out)


def from_sympy(expr, d):
    P = sympy.Poly(sympy.expand(expr), *syms(d))
    terms = {}
    for m, c in P.terms():
        c = sympy.Rational(c)
        terms[tuple(int(e) for e in m)] = Fraction(int(c.p), int(c.q))
    return Polynomial(terms, d)
