import random

import pytest
from hypothesis import given, settings, strategies as st

from hijac.motivic import (
    ONE,
    ClassSymbol,
    GroVal,
    IncomparableSymbols,
    RationalSeries,
    check_separating_specialization,
    compare_pipeline,
    compositions,
    contact_locus_class,
    expand,
    gro_equal,
    limit_T_infinity,
    nearby_cycle,
    nearby_cycle_closed_form,
    zeta,
)
from hijac.poly import parse_poly
from hijac.report import NOT_APPLICABLE
from hijac.resolve import compare_coverings, load_graph, m_separate, resolve_curve


def P(text, d=2):
    return parse_poly(text, d)


@pytest.fixture(scope="module")
def graphs():
    cusp = resolve_curve(P("x1^3 - x2^2"), "cusp")
    return {
        "node": resolve_curve(P("x1*x2"), "node"),
        "cusp": cusp,
        "cusp7": m_separate(cusp, 7),
        "smooth": resolve_curve(P("x2 - x1^2"), "smooth"),
        "a4": resolve_curve(P("x2^2 - x1^5"), "a4"),
        "triple": resolve_curve(P("x1*x2*(x1 - x2)"), "triple"),
    }


def sym(G, *ids):
    s = G.stratum(ids)
    return ClassSymbol(s.I, s.N_I, s.N_I, G.id)


def L(p=1):
    return GroVal.L(p)


def cls(G, *ids, lpoly=None):
    return GroVal.symbol(sym(G, *ids), lpoly)


def test_compositions():
    assert sorted(compositions([1, 6], 7)) == [(1, 1)]
    assert list(compositions([2, 3], 4)) == []
    assert len(list(compositions([1], 5))) == 1
    assert sorted(compositions([1, 1], 3)) == [(1, 2), (2, 1)]


def test_contact_locus_examples(graphs):
    cusp, node = graphs["cusp"], graphs["node"]
    assert contact_locus_class(cusp, 1, 2) == L(1) * cls(cusp, "E0")
    want = (cls(node, "E0") + cls(node, "E1") + cls(node, "E0", "E1", lpoly={1: 1, 0: -1})).mul_L(-2).mul_L(4)
    assert contact_locus_class(node, 2, 2) == want
    with pytest.raises(ValueError):
        contact_locus_class(cusp, 0, 2)


def test_zeta_examples(graphs):
    node, cusp, smooth = graphs["node"], graphs["cusp"], graphs["smooth"]
    Z = zeta(node)
    assert [f for _, f in Z.terms] == [((-1, 1),), ((-1, 1),), ((-1, 1), (-1, 1))]
    assert len(zeta(cusp).terms) == 7
    factors = {f for _, fs in zeta(cusp).terms for f in fs}
    assert factors == {(-1, 1), (-2, 2), (-3, 3), (-5, 6)}
    assert zeta(smooth).terms == ((cls(smooth, "E0"), ((-1, 1),)),)


def test_expand_geometric_series():
    F = RationalSeries(((GroVal.one(), ((-1, 1),)),))
    assert expand(F, 3) == [L(-1), L(-2), L(-3)]
    assert expand(RationalSeries((), GroVal.one()), 3) == [GroVal()] * 3


@pytest.mark.parametrize("name", ["node", "cusp", "cusp7", "smooth", "a4", "triple"])
def test_expansion_matches_contact_loci(graphs, name):
    G = graphs[name]
    coeffs = expand(zeta(G), 8, 2)
    for m in range(1, 9):
        assert coeffs[m - 1] == contact_locus_class(G, m, 2)


def test_limit_examples(graphs):
    node = graphs["node"]
    assert limit_T_infinity(RationalSeries(((GroVal.one(), ((-1, 1),)),))) == -GroVal.one()
    c = GroVal.L(3)
    assert limit_T_infinity(RationalSeries(((c, ((1, 2), (-4, 1))),))) == c
    want = -cls(node, "E0") - cls(node, "E1") + cls(node, "E0", "E1", lpoly={1: 1, 0: -1})
    assert limit_T_infinity(zeta(node)) == want


def _series(rng, origin="X"):
    terms = []
    for _ in range(rng.randint(0, 3)):
        c = GroVal({(ClassSymbol((f"E{rng.randint(0, 2)}",), 1, 1, origin), rng.randint(-3, 3)): rng.randint(-2, 2)})
        factors = tuple((rng.randint(-4, 2), rng.randint(1, 3)) for _ in range(rng.randint(0, 3)))
        terms.append((c, factors))
    return RationalSeries(tuple(terms), GroVal.L(rng.randint(-1, 1)).scale(rng.randint(-1, 1)))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_limit_is_linear(seed):
    rng = random.Random(seed)
    a, b = _series(rng), _series(rng)
    assert limit_T_infinity(a + b) == limit_T_infinity(a) + limit_T_infinity(b)


def test_nearby_cycle(graphs):
    node, smooth = graphs["node"], graphs["smooth"]
    want = cls(node, "E0") + cls(node, "E1") + cls(node, "E0", "E1", lpoly={0: 1, 1: -1})
    assert nearby_cycle(node) == want
    assert nearby_cycle(smooth) == cls(smooth, "E0")
    for G in graphs.values():
        assert nearby_cycle(G) == nearby_cycle_closed_form(G)
    assert len(nearby_cycle(graphs["cusp"]).symbols()) == 7


def test_separating_specialization(graphs):
    cusp, cusp7 = graphs["cusp"], graphs["cusp7"]
    rep = check_separating_specialization(cusp, 6, 2)
    assert rep.passed
    assert rep.data["contributing"] == ["E0", "E1", "E2", "E3"]
    assert check_separating_specialization(cusp, 7, 2).status == NOT_APPLICABLE
    assert check_separating_specialization(cusp7, 7, 2).passed
    for G in graphs.values():
        assert check_separating_specialization(G, 1, 2).passed


@settings(max_examples=60, deadline=None)
@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(0, 10 ** 6))
def test_grovals_form_a_module(p, q, seed):
    rng = random.Random(seed)

    def rand():
        return GroVal({(ClassSymbol((f"E{rng.randint(0, 1)}",), 1, 1, "X") if rng.random() < 0.6 else ONE,
                        rng.randint(-3, 3)): rng.randint(-3, 3) for _ in range(3)})

    a, b, c = rand(), rand(), rand()
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a - a == GroVal()
    assert a.mul_L(p).mul_L(q) == a.mul_L(p + q)
    assert GroVal.L(p) * GroVal.L(q) == GroVal.L(p + q)
    assert (a + b).mul_L(p) == a.mul_L(p) + b.mul_L(p)


def test_gro_equal_and_certificates(graphs):
    cusp = graphs["cusp"]
    a = contact_locus_class(cusp, 6, 2)
    assert gro_equal(a, a)
    assert not gro_equal(GroVal.L(1), GroVal.one())
    other = resolve_curve(P("(1 + x1^6)*(x1^3 - x2^2)"), "g")
    b = contact_locus_class(other, 6, 2)
    with pytest.raises(IncomparableSymbols):
        gro_equal(a, b)
    cert = compare_coverings(cusp, other)
    cert.data["graphs"] = (cusp.id, other.id)
    assert gro_equal(a, b, cert)
    node = resolve_curve(P("x1^2 - x2^2"), "n2")
    bad = compare_coverings(cusp, node)
    bad.data["graphs"] = (cusp.id, node.id)
    with pytest.raises(IncomparableSymbols):
        gro_equal(a, contact_locus_class(node, 2, 2), bad)


def test_compare_pipeline():
    rep = compare_pipeline(P("x1^3 - x2^2"), P("(1 + x1^6)*(x1^3 - x2^2)"))
    assert rep.passed
    assert sum(1 for c in rep.checks if c.name.startswith("[X_")) == 6
    assert not compare_pipeline(P("x1^3 - x2^2"), P("x1^2 - x2^2")).passed


def test_groval_text():
    x = ClassSymbol(("E1", "E3"), 2, 2, "G")
    v = GroVal.symbol(x, {1: 1, 0: -1}) + GroVal.L(-2).scale(3)
    assert v.to_string() == "3*L^-2 - [Et(E1,E3)] + L*[Et(E1,E3)]"
    assert str(GroVal()) == "0"


def test_series_from_hand_written_graph():
    G = load_graph("""
    ambient d=3
    divisor id=A N=2 nu=3 kind=exceptional
    divisor id=B N=3 nu=4 kind=exceptional
    intersect A B
    """)
    for m in range(1, 8):
        assert expand(zeta(G, 3), 7, 3)[m - 1] == contact_locus_class(G, m, 3)
