import json

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from flowroots.flow import BudgetExceeded, flow_poly
from flowroots.polynomial import IntPolynomial
from flowroots.multigraph import MultiGraph, block_count, identify, is_nonseparable
from flowroots.theta import (
    PhiRecord,
    ThetaEnumerator,
    cross_validate_phi_theta,
    enumerate_theta,
    expand,
    in_phi,
    nonseparable_multigraphs,
    phi_membership,
    z_graph,
)

from conftest import DT, K4, L, Z2, Z3


def test_z_graph_and_expand_examples():
    assert z_graph(3) == Z3
    assert expand(Z3, 0) == DT
    with pytest.raises(ValueError):
        z_graph(0)
    with pytest.raises(ValueError):
        expand(L, 0)


def test_level_counts():
    assert [len(enumerate_theta(k)) for k in range(2, 8)] == [1, 1, 1, 2, 4, 10]
    assert enumerate_theta(1) == []


def test_small_levels_are_z3_and_dt():
    assert enumerate_theta(2)[0].graph.code == Z3.code
    assert enumerate_theta(3)[0].graph.code == DT.code


@pytest.mark.parametrize("k", range(3, 8))
def test_member_invariants(k):
    for rec in enumerate_theta(k):
        g = rec.graph
        assert g.n == k and g.m == 3 * k - 3 and not g.loops()
        assert min(g.degrees) == 4
        assert is_nonseparable(g)
        assert max(g.multiplicity.values()) <= 3
        assert len(rec.construction) == k - 2
        # degree-4 vertices with two neighbours each carry two doubled edges
        gamma = [v for v in range(k) if g.degrees[v] == 4 and len(g.neighbours(v)) == 2]
        assert len(gamma) >= 2
        for v in gamma:
            assert sorted(g.multiplicity[tuple(sorted((v, w)))] for w in g.neighbours(v)) == [2, 2]


@pytest.mark.parametrize("k", range(2, 7))
def test_members_satisfy_phi(k):
    for rec in enumerate_theta(k):
        assert phi_membership(rec.graph).in_phi


@pytest.mark.parametrize("k", range(3, 7))
def test_identifying_expansion_ends(k):
    # expanding e = u1u2 then merging u1 with u2 leaves 1 or 3 blocks
    for rec in enumerate_theta(k):
        g = rec.graph
        for e, (u1, u2) in enumerate(g.edges):
            assert block_count(identify(g, u1, u2)) in (1, 3)


@pytest.mark.parametrize("k", range(2, 6))
def test_closure_under_expansion(k):
    nxt = {r.canonical for r in enumerate_theta(k + 1)}
    for rec in enumerate_theta(k):
        for e in range(rec.graph.m):
            assert expand(rec.graph, e).code in nxt


def test_phi_examples():
    assert not in_phi(K4)
    assert in_phi(Z3)
    assert not in_phi(Z2)
    rec = phi_membership(K4)
    assert not rec.in_phi and (rec.witness_a is not None or rec.witness_b is not None or rec.witness_c is not None)
    with pytest.raises(ValueError):
        phi_membership(L)
    with pytest.raises(ValueError):
        phi_membership(MultiGraph(3, [(0, 1), (0, 1), (1, 2), (1, 2)]))


def test_multiplicity_four_is_never_in_phi():
    for n in (2, 3):
        for g in nonseparable_multigraphs(n, max_mult=4, prefilter=False):
            if max(g.multiplicity.values()) == 4:
                assert not phi_membership(g).in_phi


def test_phi5_polynomial_factors(phi5):
    x1, x2 = IntPolynomial((-1, 1)), IntPolynomial((-2, 1))
    expected = sorted([
        (x1 * IntPolynomial((-9, 13, -6, 1)) * IntPolynomial((9, -16, 12, -5, 1))).coeffs,
        (x1 * x2 * IntPolynomial((41, -112, 132, -89, 37, -9, 1))).coeffs,
    ])
    assert sorted(flow_poly(g).coeffs for g in phi5) == expected


def test_cross_validation_up_to_six():
    cv = cross_validate_phi_theta(6)
    assert cv.passed, cv.mismatches
    assert cv.phi_counts == cv.theta_counts == {2: 1, 3: 1, 4: 1, 5: 2, 6: 4}


def test_prefilter_loses_nothing():
    for n in (2, 3, 4):
        full = {g.code for g in nonseparable_multigraphs(n, prefilter=False) if phi_membership(g).in_phi}
        kept = {g.code for g in nonseparable_multigraphs(n, prefilter=True) if phi_membership(g).in_phi}
        assert full == kept


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        enumerate_theta(7, budget=5)
    with pytest.raises(BudgetExceeded):
        cross_validate_phi_theta(5, budget=3)


def test_json_round_trip_and_cache(tmp_path):
    enum = ThetaEnumerator(cache_dir=tmp_path)
    first = enum.level(5)
    assert (tmp_path / "theta_5.json").exists()
    data = json.loads((tmp_path / "theta_5.json").read_text())
    assert {"canonical", "vertex_count", "edges", "construction"} <= set(data[0])
    again = ThetaEnumerator(budget=1, cache_dir=tmp_path).level(5)
    assert [r.canonical for r in again] == [r.canonical for r in first]
    assert [r.graph for r in again] == [r.graph for r in first]
    rec = first[0]
    assert PhiRecord.from_json(rec.to_json()).graph == rec.graph


def test_construction_replays_to_member():
    for rec in enumerate_theta(6):
        g = Z3
        for parent_code, e in rec.construction:
            assert g.code == parent_code
            g = expand(g, e)
        assert g.code == rec.canonical


@settings(max_examples=30)
@given(st.integers(3, 6), st.data())
def test_random_expansion_chain_stays_in_family(k, data):
    g = Z3
    for _ in range(k - 2):
        g = expand(g, data.draw(st.integers(0, g.m - 1)))
    assert g.code in {r.canonical for r in enumerate_theta(k)}
