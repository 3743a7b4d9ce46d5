import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from flowroots.analyzer import (
    FAIL,
    NA,
    PASS,
    coefficient_audit,
    gamma_bound,
    gamma_bound_audit,
    is_k4,
    lemma_bounds,
    profile_of_polynomial,
    roots_profile,
    screen_corpus,
    screen_graph,
    structural_bounds_audit,
    structural_profile,
)
from flowroots.corpus import load_corpus
from flowroots.flow import flow_poly
from flowroots.multigraph import MultiGraph
from flowroots.polynomial import IntPolynomial as P
from flowroots.theta import enumerate_theta

from conftest import DT, K2, K4, L, Z2, Z3, bridgeless_graphs

XI_LOWER = {k: Fraction(32, 27) for k in range(6)}


# -- root profiles ---------------------------------------------------------------

def test_k4_profile():
    rp = roots_profile(K4)
    assert rp.all_real and rp.subset_123 and rp.t == 0 and rp.omega == 0
    assert rp.multiplicities == {1: 1, 2: 1, 3: 1} and rp.complex_count == 0


def test_dt_profile():
    rp = roots_profile(DT)
    assert not rp.all_real and not rp.subset_123
    assert rp.t == 1 and rp.complex_count == 2
    assert rp.omega_string().startswith("0.569840290")
    assert rp.omega_error <= Fraction(1, 10**12)
    out = rp.to_json()
    assert out["t"] == 1 and out["mult"] == {"1": 1, "2": 0, "3": 0}


def test_profile_of_repeated_root():
    rp = profile_of_polynomial(P((-3, 2)) ** 2 * P((-1, 1)))
    assert rp.t == 2 and rp.omega == 1 and rp.omega_error == 0 and rp.all_real and not rp.subset_123


def test_profile_rejects_bridge():
    with pytest.raises(ValueError):
        roots_profile(K2)


@given(bridgeless_graphs(max_vertices=5, max_edges=9))
def test_profile_invariants(g):
    rp = roots_profile(g)
    if rp.subset_123:
        assert rp.all_real
    assert (rp.t == 0) == (rp.omega == 0)
    assert rp.real_root_count + rp.complex_count == rp.degree
    assert rp.complex_count % 2 == 0
    assert sum(rp.multiplicities.values()) <= rp.real_root_count
    assert 0 <= rp.omega <= rp.t


# -- structural profiles -------------------------------------------------------------

def test_structural_examples():
    sp = structural_profile(K4)
    assert (sp.n, sp.m, sp.r, sp.alpha, sp.gamma, sp.k) == (4, 6, 3, 0, 4, 0)
    assert sp.hypothesis_ok and sp.proper_three_cuts == 0
    sp = structural_profile(DT)
    assert sp.k == 3 and sp.alpha == 3 and sp.gamma == 0 and sp.hypothesis_ok
    assert not structural_profile(Z2).hypothesis_ok
    with pytest.raises(ValueError):
        structural_profile(MultiGraph(2, []))


@given(bridgeless_graphs(max_vertices=5, max_edges=9))
def test_structural_invariants(g):
    sp = structural_profile(g)
    if min(g.degrees) >= 3:
        assert sp.alpha == 2 * g.m - 3 * g.n
    if sp.hypothesis_ok:
        # without proper 3-edge-cuts every 3-edge-cut surrounds a degree-3 vertex
        assert sp.gamma == sp.v_counts.get(3, 0)


def test_is_k4():
    assert is_k4(K4)
    assert not is_k4(MultiGraph(4, [(0, 1), (0, 1), (1, 2), (2, 3), (2, 3), (0, 3)]))


# -- audits --------------------------------------------------------------------------

def test_coefficient_audit_examples():
    assert coefficient_audit(K4).status == PASS
    assert coefficient_audit(DT).status == PASS
    assert coefficient_audit(K2).status == NA
    assert coefficient_audit(Z2).status == NA


@pytest.mark.parametrize("k", range(2, 7))
def test_coefficient_audit_on_family(k):
    for rec in enumerate_theta(k):
        assert coefficient_audit(rec.graph).status == PASS


@settings(max_examples=80)
@given(bridgeless_graphs(max_vertices=5, max_edges=9))
def test_coefficient_audit_never_fails(g):
    assert coefficient_audit(g).status != FAIL


def test_coefficient_audit_detects_wrong_polynomial():
    assert coefficient_audit(K4, P((6, -11, 6, 1))).status == FAIL


def test_gamma_bound_examples():
    rep = gamma_bound_audit(K4)
    assert rep.status == PASS and rep.details == {"gamma": 4, "bound": "15/4", "strict": True}
    assert gamma_bound(6, 3) == Fraction(15, 4)
    rep = gamma_bound_audit(Z3)
    assert rep.status == PASS and rep.details["gamma"] == 1 and rep.details["bound"] == "1"
    assert not rep.details["strict"]
    assert gamma_bound_audit(DT).status == NA
    assert gamma_bound_audit(L).status == NA


def test_lemma_bounds_examples():
    assert all(lemma_bounds(structural_profile(K4)).values())
    # the doubled triangle has three high-degree vertices but only four independent cycles
    assert not lemma_bounds(structural_profile(DT))["r_bound"]


def test_structural_audit_examples():
    assert structural_bounds_audit(K4, xi_lower=XI_LOWER).details["case"] == "i"
    assert structural_bounds_audit(Z3, xi_lower=XI_LOWER).details["case"] == "ii"
    assert structural_bounds_audit(L, xi_lower=XI_LOWER).details["case"] == "ii"
    assert structural_bounds_audit(DT, xi_lower=XI_LOWER).status == NA
    assert structural_bounds_audit(K2).status == NA
    assert structural_bounds_audit(Z2).status == NA


# -- screening -----------------------------------------------------------------------

def test_screen_small_set(fig5b):
    graphs = [K4, Z3, Z2, L, DT, fig5b]
    records, summary = screen_corpus(graphs, xi_lower=XI_LOWER)
    real = {r["canonical"] for r in records if r["all_real"]}
    assert real == {g.code.decode() for g in (K4, Z3, Z2, L)}
    assert summary.graphs == 6 and summary.passed
    assert [r["canonical"] for r in records] == sorted(g.code.decode() for g in graphs)


def test_screen_record_fields():
    rec = screen_graph(K4, Fraction(1, 10**12), XI_LOWER)
    assert {"canonical", "V", "E", "coeffs", "all_real", "subset_123", "t", "omega", "k",
            "hypothesis_ok", "audits", "counterexample", "classification_applies"} <= set(rec)
    assert rec["coeffs"] == [-6, 11, -6, 1] and not rec["counterexample"]
    assert set(rec["audits"]) == {"wakelin", "coefficients", "gamma_bound", "structural"}


def test_empty_corpus():
    records, summary = screen_corpus([], xi_lower=XI_LOWER)
    assert records == [] and summary.passed and summary.to_json()["graphs"] == 0


def test_jobs_do_not_change_records():
    graphs = load_corpus("v4e7m3")
    one, _ = screen_corpus(graphs, jobs=1, xi_lower=XI_LOWER)
    two, _ = screen_corpus(graphs, jobs=3, xi_lower=XI_LOWER)
    assert one == two


def _newton(coeffs):
    n = len(coeffs) - 1
    e = [Fraction(c, math.comb(n, i)) for i, c in enumerate(coeffs)]
    return all(e[i] ** 2 >= e[i - 1] * e[i + 1] for i in range(1, n))


def test_newton_inequalities_on_all_real_polynomials():
    checked = 0
    for g in load_corpus("small"):
        p = flow_poly(g)
        if roots_profile(g).all_real:
            checked += 1
            assert _newton(p.coeffs)
    assert checked > 50


def test_corpus_profile_bookkeeping():
    for g in load_corpus("small"):
        rp = roots_profile(g)
        m1, m2 = rp.multiplicities.get(1, 0), rp.multiplicities.get(2, 0)
        assert rp.t <= rp.degree - m1 - m2
        sp = structural_profile(g)
        if sp.hypothesis_ok and rp.all_real and sp.k >= 3:
            assert rp.omega + rp.omega_error >= g.m - 2 * g.n + 1
