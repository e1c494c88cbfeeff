"""Higher Jacobian matrices, their maximal minors and higher Jacobian ideals."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .poly import Polynomial, Substitution, divides, grlex_key, substitute, taylor_coefficient

__all__ = [
    "Version",
    "JacobianMatrix",
    "IdealGens",
    "multiindices",
    "jac_matrix",
    "maximal_minors",
    "minors",
    "jacobian_ideal",
    "fitting_ideal",
    "verify_kernel_identity",
    "generic_rank",
    "matrix_rank_at",
    "bareiss_rank",
]


class Version(enum.Enum):
    ZERO_DIAGONAL = "zero"
    F_DIAGONAL = "f-diag"
    JACOBI_TAYLOR = "jacobi-taylor"


def multiindices(d: int, lo: int, hi: int) -> list:
    """All exponent tuples with lo <= |a| <= hi.

    Degrees ascend; inside one degree the order is lexicographically
    descending, so x1 comes before x2 (the column order of Jac_n).
    """
    if lo < 0 or hi < lo:
        return []
    out = []
    for k in range(lo, hi + 1):
        out.extend(_compositions(k, d))
    return out


def _compositions(k, d):
    # lex-descending weak compositions of k into d parts
    if d == 1:
        return [(k,)]
    out = []
    for first in range(k, -1, -1):
        for rest in _compositions(k - first, d - 1):
            out.append((first,) + rest)
    return out


@dataclass(frozen=True)
class JacobianMatrix:
    rows: tuple
    cols: tuple
    entries: tuple  # tuple of row tuples of Polynomial
    version: Version
    f: Polynomial
    n: int

    @property
    def shape(self):
        return len(self.rows), len(self.cols)

    def entry(self, beta, alpha) -> Polynomial:
        return self.entries[self.rows.index(tuple(beta))][self.cols.index(tuple(alpha))]

    def transpose(self) -> list:
        return [list(col) for col in zip(*self.entries)]

    def to_text(self, names=None) -> str:
        cells = [[e.to_string(names) for e in row] for row in self.entries]
        if not cells:
            return ""
        widths = [max(len(r[j]) for r in cells) for j in range(len(cells[0]))]
        return "\n".join(
            "[ " + "  ".join(c.rjust(w) for c, w in zip(r, widths)) + " ]" for r in cells
        )


def jac_matrix(f: Polynomial, n: int, version: Version | str = Version.ZERO_DIAGONAL) -> JacobianMatrix:
    """The order-n Jacobian matrix of f, rows beta (|beta| < n), columns alpha."""
    if n < 1:
        raise ValueError("order n must be at least 1")
    version = Version(version)
    d = f.d
    rows = multiindices(d, 0, n - 1)
    cols = multiindices(d, 0 if version is Version.JACOBI_TAYLOR else 1, n)
    zero = Polynomial.zero(d)
    taylor: dict = {}
    entries = []
    for beta in rows:
        row = []
        for alpha in cols:
            if not divides(beta, alpha):
                row.append(zero)
            elif alpha == beta:
                row.append(zero if version is Version.ZERO_DIAGONAL else f)
            else:
                gamma = tuple(a - b for a, b in zip(alpha, beta))
                if gamma not in taylor:
                    taylor[gamma] = taylor_coefficient(f, gamma)
                row.append(taylor[gamma])
        entries.append(tuple(row))
    return JacobianMatrix(tuple(rows), tuple(cols), tuple(entries), version, f, n)


# ----------------------------------------------------------------------
# minors
# ----------------------------------------------------------------------

def _square_minors(rows: Sequence[Sequence[Polynomial]], d: int):
    """All maximal minors of a k x m matrix (k <= m), one per k-subset of columns.

    Laplace expansion along the first row; sub-minors on the remaining rows
    are shared between column subsets and memoized.
    """
    k = len(rows)
    m = len(rows[0]) if rows else 0
    zero = Polynomial.zero(d)
    one = Polynomial.constant(1, d)
    memo: dict = {}

    def det(r, cols):
        # cols: tuple of column indices, len(cols) == k - r
        if r == k:
            return one
        key = (r, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = zero
        row = rows[r]
        for j, c in enumerate(cols):
            a = row[c]
            if not a:
                continue
            sub = det(r + 1, cols[:j] + cols[j + 1:])
            if not sub:
                continue
            t = a * sub
            total = total - t if j & 1 else total + t
        memo[key] = total
        return total

    return [det(0, cols) for cols in combinations(range(m), k)]


def minors(matrix: Sequence[Sequence[Polynomial]], size: int, d: int | None = None) -> list:
    """All size x size minors (row subsets outer, column subsets inner, both lex)."""
    matrix = [list(r) for r in matrix]
    nr = len(matrix)
    nc = len(matrix[0]) if nr else 0
    if d is None:
        d = matrix[0][0].d
    if size == 0:
        return [Polynomial.constant(1, d)]
    if size > min(nr, nc):
        return []
    out = []
    for rsub in combinations(range(nr), size):
        out.extend(_square_minors([matrix[i] for i in rsub], d))
    return out


def maximal_minors(M: JacobianMatrix | Sequence[Sequence[Polynomial]]) -> list:
    """Determinants of all row-count-sized column selections, in lex order of selections."""
    rows = M.entries if isinstance(M, JacobianMatrix) else [list(r) for r in M]
    if not rows:
        return []
    if len(rows) > len(rows[0]):
        raise ValueError("maximal minors need rows <= columns")
    return _square_minors(rows, rows[0][0].d)


# ----------------------------------------------------------------------
# ideals
# ----------------------------------------------------------------------

class IdealGens:
    """A canonical generating list of a polynomial ideal.

    Generators are made primitive (integer coefficients, gcd 1, positive
    leading coefficient), zeros and duplicates are dropped and the list is
    sorted by descending graded-lex leading term.
    """

    __slots__ = ("gens", "d")

    def __init__(self, gens: Sequence[Polynomial], d: int | None = None):
        gens = list(gens)
        if d is None:
            if not gens:
                raise ValueError("cannot infer d from an empty generator list")
            d = gens[0].d
        if any(g.d != d for g in gens):
            raise ValueError("generators live in different rings")
        seen = {}
        for g in gens:
            if g:
                p = g.primitive()
                seen[p] = None
        canon = sorted(seen, key=_gen_key, reverse=True)
        object.__setattr__(self, "gens", tuple(canon))
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("IdealGens is immutable")

    @classmethod
    def unit(cls, d: int) -> "IdealGens":
        return cls([Polynomial.constant(1, d)], d)

    def is_zero(self) -> bool:
        return not self.gens

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def __eq__(self, other):
        return isinstance(other, IdealGens) and self.d == other.d and self.gens == other.gens

    def __hash__(self):
        return hash((self.d, self.gens))

    def to_strings(self, names=None) -> list:
        return [g.to_string(names) for g in self.gens]

    def __repr__(self):
        return "<" + ", ".join(self.to_strings()) + ">"


def _gen_key(p: Polynomial):
    return [grlex_key(m) for m, _ in p.sorted_terms()]


def jacobian_ideal(f: Polynomial, n: int, version: Version | str = Version.ZERO_DIAGONAL) -> IdealGens:
    """The n-th Jacobian ideal: all maximal minors of Jac_n(f)."""
    M = jac_matrix(f, n, version)
    return IdealGens(maximal_minors(M), f.d)


def fitting_ideal(A: Sequence[Sequence[Polynomial]], i: int, d: int | None = None) -> IdealGens:
    """i-th Fitting ideal of the module presented by relation matrix A.

    A has one row per generator (N rows) and one column per relation, so the
    ideal is generated by the (N - i)-minors of A.
    """
    if i < 0:
        raise ValueError("Fitting index must be non-negative")
    A = [list(r) for r in A]
    N = len(A)
    if d is None:
        d = A[0][0].d
    size = N - i
    if size <= 0:
        return IdealGens.unit(d)
    ncols = len(A[0]) if A else 0
    if ncols < N:
        # fewer relations than generators: minors of the transpose are cheaper
        At = [list(c) for c in zip(*A)]
        return IdealGens(minors(At, size, d), d)
    return IdealGens(minors(A, size, d), d)


# ----------------------------------------------------------------------
# kernel identity and rank
# ----------------------------------------------------------------------

def verify_kernel_identity(f: Polynomial, n: int) -> bool:
    """Check that every row of Jac_n(f) is a relation among the [(x'-x)^alpha].

    Works in 2d variables (x, x').  For each beta with |beta| < n,
        sum_{alpha > beta} r_{beta,alpha}(x) (x'-x)^alpha - (x'-x)^beta (f(x') - f(x))
    must lie in <x'-x>^(n+1).  The change of coordinates x' = x + h turns that
    ideal into the monomial ideal <h>^(n+1), so it suffices to substitute
    and look at the h-degree of every surviving term.
    """
    if n < 1:
        raise ValueError("order n must be at least 1")
    d = f.d
    D = 2 * d
    xs = [Polynomial.variable(i, D) for i in range(d)]
    xps = [Polynomial.variable(d + i, D) for i in range(d)]
    delta = [xp - x for x, xp in zip(xs, xps)]
    lift = Substitution(xs)
    lift_prime = Substitution(xps)
    f_x = substitute(f, lift)
    f_xp = substitute(f, lift_prime)
    diff = f_xp - f_x

    def delta_pow(alpha):
        out = Polynomial.constant(1, D)
        for dl, a in zip(delta, alpha):
            if a:
                out = out * dl ** a
        return out

    M = jac_matrix(f, n)
    # x' -> x + h, then h-degree counts exponents in the last d slots
    shift = Substitution(xs + [x + xp for x, xp in zip(xs, xps)])
    for b, beta in enumerate(M.rows):
        lhs = Polynomial.zero(D)
        for a, alpha in enumerate(M.cols):
            r = M.entries[b][a]
            if r:
                lhs = lhs + substitute(r, lift) * delta_pow(alpha)
        rhs = delta_pow(beta) * diff
        rem = substitute(lhs - rhs, shift)
        if any(sum(m[d:]) <= n for m, _ in rem.items()):
            return False
    return True


def matrix_rank_at(rows: Sequence[Sequence[Polynomial]], point: Sequence) -> int:
    """Rank of the matrix with every entry evaluated at ``point``."""
    from .poly import evaluate

    A = [[evaluate(e, point) for e in row] for row in rows]
    return _fraction_rank(A)


def _fraction_rank(A) -> int:
    A = [list(r) for r in A]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][c]
        for i in range(rank + 1, len(A)):
            if A[i][c]:
                factor = A[i][c] / p
                A[i] = [x - factor * y for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def generic_rank(M: JacobianMatrix | Sequence[Sequence[Polynomial]], tries: int = 4, seed: int = 0) -> int:
    """Rank over the fraction field of the polynomial ring.

    Rank at any rational point is a lower bound; once it reaches
    min(rows, cols) the answer is certified.  Otherwise fall back to exact
    fraction-free (Bareiss) elimination over the polynomials.
    """
    rows = M.entries if isinstance(M, JacobianMatrix) else [list(r) for r in M]
    if not rows or not rows[0]:
        return 0
    d = rows[0][0].d
    bound = min(len(rows), len(rows[0]))
    rng = random.Random(seed)
    best = 0
    for _ in range(tries):
        pt = [Fraction(rng.randint(-97, 97), rng.randint(1, 13)) for _ in range(d)]
        best = max(best, matrix_rank_at(rows, pt))
        if best == bound:
            return best
    return bareiss_rank(rows)


def bareiss_rank(rows: Sequence[Sequence[Polynomial]]) -> int:
    """Exact rank by fraction-free Gaussian elimination with polynomial entries."""
    A = [list(r) for r in rows]
    if not A or not A[0]:
        return 0
    d = A[0][0].d
    nrows, ncols = len(A), len(A[0])
    prev = Polynomial.constant(1, d)
    rank = 0
    for c in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if A[i][c]:
                if piv is None or len(A[i][c]) < len(A[piv][c]):
                    piv = i
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][c]
        for i in range(rank + 1, nrows):
            a = A[i][c]
            new = []
            for j in range(ncols):
                if j <= c:
                    new.append(Polynomial.zero(d))
                    continue
                v = p * A[i][j] - a * A[rank][j]
                new.append(v.exact_div(prev) if v else v)
            A[i] = new
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank
