"""Nash blowup local algebras and executable contact-invariance checks.

Every statement about convergent power series is checked for polynomial
representatives in the localisation of Q[x] at the origin (Mora standard
bases).  Witnesses that are only known up to some degree are accepted in
"truncated" mode, which is always disclosed in the report.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .groebner import (
    INFINITE,
    MonomialOrder,
    OrderedIdeal,
    apply_automorphism,
    groebner_basis,
    ideal_equal,
    ideal_power,
    ideal_sum,
    local_dimension,
    membership,
    standard_basis,
)
from .jacobian import IdealGens, Version, jac_matrix, jacobian_ideal, maximal_minors
from .poly import Polynomial, Substitution, substitute
from .report import FAIL, PASS, Report

__all__ = [
    "NashAlgebra",
    "ContactWitness",
    "nash_algebra",
    "nash_ideal",
    "check_unit_invariance",
    "check_det_congruence",
    "check_automorphism_equivariance",
    "check_contact_invariance",
    "check_inclusion_J1_power",
    "check_weighted_homogeneous_invariance",
    "check_version_independence",
]

LOCAL = MonomialOrder.LOCAL_GRADED


@dataclass(frozen=True)
class NashAlgebra:
    f: Polynomial
    n: int
    ideal: OrderedIdeal
    dimension: object
    monomial_basis: tuple

    def basis_strings(self, names=None) -> list:
        return [Polynomial.monomial(m).to_string(names) for m in self.monomial_basis]


@dataclass(frozen=True)
class ContactWitness:
    """Candidate data (sigma, u) for g = u * sigma(f)."""

    sigma: Substitution
    u: Polynomial
    degree_bound: int | None = None

    def validate(self):
        if not self.sigma.fixes_origin():
            raise ValueError("automorphism must fix the origin")
        if _det(self.sigma.linear_part()) == 0:
            raise ValueError("linear part of the automorphism is singular")
        if self.u.constant_term() == 0:
            raise ValueError("u is not a unit at the origin")


def _det(rows) -> Fraction:
    A = [list(map(Fraction, r)) for r in rows]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                k = A[i][c] / A[c][c]
                A[i] = [x - k * y for x, y in zip(A[i], A[c])]
    return det


def _require_origin(f: Polynomial, name="f"):
    if f.constant_term() != 0:
        raise ValueError(f"{name} must vanish at the origin")


def _require_unit(u: Polynomial):
    if u.constant_term() == 0:
        raise ValueError("u must not vanish at the origin")


def nash_ideal(f: Polynomial, n: int, version=Version.ZERO_DIAGONAL) -> IdealGens:
    """<f> + J_n(f)."""
    return ideal_sum(IdealGens([f], f.d), jacobian_ideal(f, n, version))


def nash_algebra(f: Polynomial, n: int, version=Version.ZERO_DIAGONAL) -> NashAlgebra:
    _require_origin(f)
    if n < 1:
        raise ValueError("order n must be at least 1")
    I = nash_ideal(f, n, version)
    B = standard_basis(I)
    q = local_dimension(I)
    return NashAlgebra(f, n, B, q.dimension, q.basis)


def _dims_equal(I: IdealGens, J: IdealGens):
    a, b = local_dimension(I).dimension, local_dimension(J).dimension
    return a == b, a, b


def check_unit_invariance(f: Polynomial, u: Polynomial, n: int) -> Report:
    """<f> + J_n(f) and <f> + J_n(uf) agree locally for a unit u."""
    _require_origin(f)
    _require_unit(u)
    rep = Report(f"unit invariance (n={n})")
    I = nash_ideal(f, n)
    J = ideal_sum(IdealGens([f], f.d), jacobian_ideal(u * f, n))
    rep.add("local ideal equality <f,J_n(f)> = <f,J_n(uf)>", ideal_equal(I, J, LOCAL))
    ok, a, b = _dims_equal(I, J)
    rep.add("local dimensions agree", ok, f"{a} vs {b}")
    return rep


def check_det_congruence(f: Polynomial, u: Polynomial, n: int) -> Report:
    """det M_iota^{uf} = u^R det M_iota^f mod <f> for every column selection iota."""
    _require_unit(u)
    rep = Report(f"determinant congruence (n={n})")
    Mf = jac_matrix(f, n)
    Muf = jac_matrix(u * f, n)
    R = len(Mf.rows)
    uR = u ** R
    F = groebner_basis(IdealGens([f], f.d)) if f else None
    bad = []
    count = 0
    for a, b in zip(maximal_minors(Muf), maximal_minors(Mf)):
        diff = a - uR * b
        count += 1
        inside = (not diff) if F is None else membership(diff, F)
        if not inside:
            bad.append(diff)
    rep.add(
        f"all {count} selections congruent mod <f> (exponent {R})",
        not bad,
        f"{count - len(bad)}/{count} pass",
        bad[0] if bad else None,
    )
    rep.data["selections"] = count
    return rep


def check_automorphism_equivariance(
    f: Polynomial, sigma: Substitution, n: int, order: MonomialOrder = LOCAL
) -> Report:
    """sigma(J_n(f)) = J_n(f o sigma), checked at the origin by default."""
    if _det(sigma.linear_part()) == 0:
        raise ValueError("linear part of the automorphism is singular")
    rep = Report(f"automorphism equivariance (n={n}, order={MonomialOrder(order).value})")
    if not sigma.fixes_origin():
        rep.notes.append("sigma moves the origin; comparison is still made at the origin")
    lhs = apply_automorphism(jacobian_ideal(f, n), sigma)
    rhs = jacobian_ideal(substitute(f, sigma), n)
    rep.add("sigma(J_n(f)) = J_n(sigma(f))", ideal_equal(lhs, rhs, order))
    return rep


def check_contact_invariance(f: Polynomial, g: Polynomial, w: ContactWitness, n: int) -> Report:
    """Certificate that M_n(f) and M_n(g) are isomorphic, given g = u * sigma(f)."""
    _require_origin(f)
    _require_origin(g, "g")
    rep = Report(f"contact invariance (n={n})")
    try:
        w.validate()
    except ValueError as exc:
        rep.add("witness validity", FAIL, str(exc))
        return rep
    residual = g - w.u * substitute(f, w.sigma)
    if not residual:
        rep.add("witness validity", PASS, "g = u*sigma(f) exactly")
    elif w.degree_bound is not None:
        low = residual.truncate(w.degree_bound)
        rep.add("witness validity", not low,
                f"truncated mode: terms of degree <= {w.degree_bound} checked",
                low if low else None)
        rep.notes.append("TRUNCATED witness: identity verified only up to the degree bound")
    else:
        rep.add("witness validity", FAIL, "g - u*sigma(f) is not zero", residual)
    If = nash_ideal(f, n)
    Ig = nash_ideal(g, n)
    carried = apply_automorphism(If, w.sigma)
    rep.add("sigma(<f,J_n(f)>) = <g,J_n(g)> locally", ideal_equal(carried, Ig, LOCAL))
    ok, a, b = _dims_equal(If, Ig)
    rep.add("dim M_n(f) = dim M_n(g)", ok, f"{a} vs {b}")
    rep.data.update(dim_f=str(a), dim_g=str(b))
    return rep


def check_inclusion_J1_power(f: Polynomial, n: int) -> Report:
    """J_n(f) is contained in J_1(f)^k with k = C(d-2+n, d-1)."""
    if n < 1:
        raise ValueError("order n must be at least 1")
    d = f.d
    k = comb(d - 2 + n, d - 1) if d >= 2 else 1
    rep = Report(f"inclusion J_{n} in J_1^{k}")
    Jn = jacobian_ideal(f, n)
    P = groebner_basis(ideal_power(jacobian_ideal(f, 1), k))
    bad = [g for g in Jn.gens if not membership(g, P)]
    rep.add(f"every generator of J_{n}(f) lies in J_1(f)^{k}", not bad,
            f"{len(Jn) - len(bad)}/{len(Jn)} generators", bad[0] if bad else None)
    case_split = (d >= 3 and n >= 2) or (d == 2 and n >= 3)
    rep.data.update(exponent=k, exponent_at_least_3=k >= 3, case_split=case_split)
    if d >= 2:
        rep.add("exponent >= 3 matches the case split", (k >= 3) == case_split,
                f"k={k}, (d>=3,n>=2) or (d=2,n>=3) is {case_split}")
    return rep


def check_weighted_homogeneous_invariance(
    f: Polynomial, weights: Sequence[int], u: Polynomial, n: int
) -> Report:
    if len(weights) != f.d or any(w <= 0 for w in weights):
        raise ValueError("need one positive weight per variable")
    if not f.is_weighted_homogeneous(weights):
        raise ValueError("f is not weighted homogeneous for the given weights")
    _require_unit(u)
    rep = Report(f"weighted homogeneous unit invariance (n={n})")
    rep.add("J_n(f) = J_n(uf) locally",
            ideal_equal(jacobian_ideal(f, n), jacobian_ideal(u * f, n), LOCAL))
    return rep


def check_version_independence(f: Polynomial, n: int, order: MonomialOrder = MonomialOrder.GRADED_REVLEX) -> Report:
    """<f> + J_n(f) does not depend on the matrix diagonal convention."""
    rep = Report(f"version independence (n={n})")
    zero = nash_ideal(f, n, Version.ZERO_DIAGONAL)
    fdiag = nash_ideal(f, n, Version.F_DIAGONAL)
    rep.add("zero-diagonal vs f-diagonal", ideal_equal(zero, fdiag, order))
    return rep
