from fractions import Fraction

import pytest
from hypothesis import given, settings

from flowroots.corpus import load_corpus
from flowroots.flow import flow_poly
from flowroots.multigraph import big_vertices, from_code
from flowroots.polynomial import IntPolynomial as P, count_real_roots, isolate_and_refine
from flowroots.theta import enumerate_theta
from flowroots.xi import TWO, Eta, compare, eta, eta_family, eta_of_polynomial, irreducible_factors, xi

from conftest import DT, K2, K4, Z2, Z3, bridgeless_graphs

CUBICS = {
    3: (P((-7, 10, -5, 1)), "1.430159709"),
    4: (P((-6, 8, -4, 1)), "1.361103081"),
    5: (P((-9, 13, -6, 1)), "1.317672196"),
}


def test_eta_examples():
    assert eta(Z3) == Eta(None, None, True)
    assert eta(K4).root is None and eta(K4).two_is_root
    assert eta(Z2).root is None and not eta(Z2).two_is_root
    e = eta(DT)
    assert e.factor == CUBICS[3][0]
    assert e.low < Fraction("1.430159709003") and e.high > Fraction("1.430159709001")
    with pytest.raises(ValueError):
        eta(K2)


def test_eta_of_second_phi5_graph(phi5):
    values = sorted(eta(g).approx() for g in phi5)
    assert values[0].startswith("1.317672196")
    assert values[1].startswith("1.335087886")


def test_eta_family_examples():
    best, idx = eta_family([Z3, DT, K4])
    assert idx == 1 and best.factor == CUBICS[3][0]
    best, idx = eta_family([Z3, K4])
    assert best == TWO and idx is None
    best, idx = eta_family([])
    assert best == TWO


@pytest.mark.parametrize("k", [3, 4, 5])
def test_xi_constants(k):
    cubic, digits = CUBICS[k]
    cert = xi(k, tolerance=Fraction(1, 10**12))
    assert cert.minimal_factor == cubic
    assert cert.value_approx.startswith(digits[:-1])
    lo, hi = cert.isolating_interval
    assert hi - lo <= Fraction(1, 10**12)
    assert abs(lo - Fraction(digits)) < Fraction(1, 10**9)
    assert count_real_roots(cubic, (lo, hi), (True, True)) == 1


def test_xi_small_k_is_two():
    for k in range(3):
        cert = xi(k)
        assert cert.exact and cert.value_approx == "2" and cert.minimal_factor is None
    with pytest.raises(ValueError):
        xi(-1)


def test_xi_is_non_increasing():
    certs = [xi(k) for k in range(2, 8)]
    for a, b in zip(certs, certs[1:]):
        assert compare(b.eta, a.eta) <= 0
    assert xi(6).minimal_factor.degree == 7
    assert xi(6).value_approx.startswith("1.306187555")


def test_xi_json_fields():
    out = xi(4).to_json()
    assert out["k"] == 4 and out["factor"] == {"coeffs": [-6, 8, -4, 1]}
    assert set(out) == {"k", "value", "interval", "factor", "graph", "exact", "levels"}
    assert set(out["levels"]) == {"2", "3", "4"}


def test_compare_detects_equal_algebraic_numbers():
    # two different polynomials sharing the root sqrt(2)
    p = P((-2, 0, 1))
    q = p * P((-3, 1))
    a, b = eta_of_polynomial(p), eta_of_polynomial(q, Fraction(1, 10**3))
    assert compare(a, b) == 0 and compare(b, a) == 0
    c = eta_of_polynomial(P((-7, 10, -5, 1)))
    assert compare(a, c) == -1 and compare(c, a) == 1
    assert compare(TWO, c) == 1 and compare(TWO, TWO) == 0


def test_irreducible_factors_of_dt():
    assert sorted(f.coeffs for f in irreducible_factors(flow_poly(DT))) == sorted([(-1, 1), (-7, 10, -5, 1)])


@pytest.mark.parametrize("k", range(2, 7))
def test_family_members_have_no_roots_below_xi(k):
    bound = xi(k).eta.low
    for rec in enumerate_theta(k):
        assert count_real_roots(flow_poly(rec.graph), (1, bound)) == 0


def test_zero_free_sampling_on_small_corpus():
    bounds = {k: xi(k).eta.low for k in range(0, 5)}
    for g in load_corpus("small"):
        w = len(big_vertices(g))
        p = flow_poly(g)
        for k in range(w, 5):
            assert count_real_roots(p, (1, bounds[k])) == 0


@settings(max_examples=40)
@given(bridgeless_graphs(max_vertices=5, max_edges=9))
def test_no_root_in_one_to_32_27(g):
    assert count_real_roots(flow_poly(g), (1, Fraction(32, 27)), (False, True)) == 0


@pytest.mark.parametrize("k", [3, 4, 5])
def test_minimal_factor_divides_the_family_polynomial(k):
    cert = xi(k)
    g = from_code(cert.attaining_graph)
    assert cert.minimal_factor.divides(flow_poly(g))
    (r,) = isolate_and_refine(cert.minimal_factor, (1, 2))
    assert r.low <= cert.eta.high and cert.eta.low <= r.high
