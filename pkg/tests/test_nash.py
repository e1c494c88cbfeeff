import random

import pytest

from hijac.groebner import MonomialOrder, groebner_basis, membership
from hijac.jacobian import IdealGens, jac_matrix, maximal_minors
from hijac.nash import (
    ContactWitness,
    check_automorphism_equivariance,
    check_contact_invariance,
    check_det_congruence,
    check_inclusion_J1_power,
    check_unit_invariance,
    check_version_independence,
    check_weighted_homogeneous_invariance,
    nash_algebra,
)
from hijac.poly import Substitution, parse_poly, substitute
from hijac.report import FAIL, PASS
from helpers import random_poly


def P(text, d=2):
    return parse_poly(text, d)


CUSP = P("x1^3 - x2^2")
SIGMA = Substitution([P("x1 + x2^2"), P("x2")])


def test_nash_dimensions_of_the_cusp():
    assert nash_algebra(CUSP, 1).dimension == 2
    A = nash_algebra(CUSP, 2)
    assert A.dimension == 7
    assert A.basis_strings() == ["1", "x1", "x2", "x1^2", "x1*x2", "x1^3", "x1^2*x2"]


def test_first_nash_algebra_is_tjurina_algebra():
    # for quasi-homogeneous germs Tjurina and Milnor numbers agree
    assert nash_algebra(P("x1^3 + x2^4"), 1).dimension == 6
    assert nash_algebra(P("x1^2 + x2^2 + x3^2", 3), 1).dimension == 1


@pytest.mark.parametrize("u", ["2", "1 + x1", "1 + x1 + x2^2"])
@pytest.mark.parametrize("n", [1, 2])
def test_unit_invariance_and_det_congruence(u, n):
    assert check_unit_invariance(CUSP, P(u), n).passed
    rep = check_det_congruence(CUSP, P(u), n)
    assert rep.passed and rep.data["selections"] == (2 if n == 1 else 10)


def test_det_congruence_needs_the_right_exponent():
    # three rows, so the minors pick up u^3 and not u^2
    u = P("1 + x1")
    F = groebner_basis(IdealGens([CUSP], 2))
    pairs = list(zip(maximal_minors(jac_matrix(u * CUSP, 2)), maximal_minors(jac_matrix(CUSP, 2))))
    assert all(membership(a - u ** 3 * b, F) for a, b in pairs)
    assert not all(membership(a - u ** 2 * b, F) for a, b in pairs)


def test_unit_must_be_a_unit():
    with pytest.raises(ValueError):
        check_unit_invariance(CUSP, P("x1"), 1)


@pytest.mark.parametrize("n", [1, 2])
def test_contact_family(n):
    u = P("1 + x1")
    g = u * substitute(CUSP, SIGMA)
    assert check_automorphism_equivariance(CUSP, SIGMA, n).passed
    rep = check_contact_invariance(CUSP, g, ContactWitness(SIGMA, u), n)
    assert rep.passed
    assert rep.data["dim_f"] == rep.data["dim_g"] == ("2" if n == 1 else "7")


def test_contact_rejects_bad_witnesses():
    u = P("1 + x1")
    g = u * substitute(CUSP, SIGMA)
    rep = check_contact_invariance(CUSP, g + P("x1^5"), ContactWitness(SIGMA, u), 2)
    assert rep.status == FAIL
    assert rep.checks[0].offending == "x1^5"
    bad = ContactWitness(Substitution([P("x1^2"), P("x2")]), u)
    assert check_contact_invariance(CUSP, g, bad, 1).status == FAIL
    moved = ContactWitness(Substitution([P("x1 + 1"), P("x2")]), u)
    assert check_contact_invariance(CUSP, g, moved, 1).status == FAIL


def test_truncated_witness_is_disclosed():
    u = P("1 + x1")
    g = u * substitute(CUSP, SIGMA) + P("x1^9")
    rep = check_contact_invariance(CUSP, g, ContactWitness(SIGMA, u, degree_bound=6), 2)
    assert rep.passed
    assert any("TRUNCATED" in n for n in rep.notes)


def test_automorphism_equivariance_global_order_for_linear_maps():
    lin = Substitution([P("x1 + 2*x2"), P("x2 - x1")])
    rep = check_automorphism_equivariance(CUSP, lin, 2, MonomialOrder.GRADED_REVLEX)
    assert rep.passed


@pytest.mark.parametrize("f, d, n, k, flag", [
    ("x1^3 - x2^2", 2, 2, 2, False),
    ("x1^3 - x2^2", 2, 3, 3, True),
    ("x1^2 + x2^3 + x3^3", 3, 2, 3, True),
    ("x1^2 + x2^3 + x3^3", 3, 1, 1, False),
])
def test_inclusion_in_power_of_first_ideal(f, d, n, k, flag):
    rep = check_inclusion_J1_power(P(f, d), n)
    assert rep.passed
    assert rep.data["exponent"] == k
    assert rep.data["exponent_at_least_3"] == flag == rep.data["case_split"]


def test_weighted_homogeneous_invariance():
    assert check_weighted_homogeneous_invariance(CUSP, [2, 3], P("1 + x1 + x2"), 2).passed
    with pytest.raises(ValueError):
        check_weighted_homogeneous_invariance(P("x1^3 - x2^2 + x1*x2"), [2, 3], P("1"), 2)


def test_version_independence_random():
    rng = random.Random(1)
    for _ in range(4):
        f = random_poly(rng, 2, deg=4)
        assert check_version_independence(f, 2).passed


def test_report_text():
    rep = check_unit_invariance(CUSP, P("2"), 1)
    text = rep.to_text()
    assert text.startswith("unit invariance (n=1): PASS")
    assert rep.to_dict()["status"] == PASS
