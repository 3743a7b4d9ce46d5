import itertools

import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from flowroots.corpus import (
    CorpusSpec,
    bridgeless_multigraphs,
    build_corpus,
    connected_simple_graphs,
    load_corpus,
    parse_corpus_spec,
    random_bridgeless,
    random_samples,
)
from flowroots.multigraph import MultiGraph, has_bridge, is_connected


def test_connected_simple_graph_counts():
    levels = connected_simple_graphs(6, 15)
    assert [len(levels[n]) for n in range(1, 7)] == [1, 1, 2, 6, 21, 112]


def _over_cap(g, mult):
    return any(c > mult for (u, w), c in g.multiplicity.items() if u != w)


def _brute_corpus(n_max, e_max, mult, loops):
    out = set()
    for n in range(1 if loops else 2, n_max + 1):
        pairs = [(u, w) for u in range(n) for w in range(u, n) if loops or u != w]
        for size in range(1, e_max + 1):
            for combo in itertools.combinations_with_replacement(pairs, size):
                g = MultiGraph(n, combo)
                if not _over_cap(g, mult) and is_connected(g) and not has_bridge(g):
                    out.add(g.code)
    return out


def test_loopless_corpus_matches_brute_force():
    got = {g.code for g in bridgeless_multigraphs(CorpusSpec(4, 6, 3))}
    assert got == _brute_corpus(4, 6, 3, loops=False)


def test_corpus_with_loops_matches_brute_force():
    spec = CorpusSpec(3, 5, 5, min_vertices=1, max_loops=5)
    got = {g.code for g in bridgeless_multigraphs(spec)}
    assert got == _brute_corpus(3, 5, 5, loops=True)


def test_named_corpus_sizes():
    assert len(load_corpus("e9")) == 2952
    assert len(load_corpus("e9-loopless")) == 829


def test_corpus_is_sorted_and_bridgeless():
    graphs = load_corpus("small")
    codes = [g.code for g in graphs]
    assert codes == sorted(codes) and len(set(codes)) == len(codes)
    assert all(is_connected(g) and not has_bridge(g) for g in graphs)
    assert all(g.m <= 8 and g.n <= 5 and max(g.multiplicity.values()) <= 3 for g in graphs)


def test_spec_parsing():
    assert parse_corpus_spec("default") == CorpusSpec(6, 11, 3)
    assert parse_corpus_spec("v4e6m2") == CorpusSpec(4, 6, 2)
    assert parse_corpus_spec("v4e6") == CorpusSpec(4, 6, 6)
    assert parse_corpus_spec("v3e5m2l2r10", seed=7) == CorpusSpec(3, 5, 2, 2, 10, 7, 2)
    assert parse_corpus_spec("small", seed=3).seed == 3
    assert parse_corpus_spec("v3e5m2l2r10").name == "v3e5m2l2r10"
    for bad in ("", "v3", "e5", "v3e5x", "huge"):
        with pytest.raises(ValueError):
            parse_corpus_spec(bad)


def test_random_samples_are_deterministic():
    a = random_samples(20, seed=5)
    b = random_samples(20, seed=5)
    assert a == b
    assert random_samples(20, seed=6) != a
    spec = parse_corpus_spec("v3e4r15", seed=1)
    assert build_corpus(spec) == build_corpus(spec)


@given(st.integers(0, 2**32 - 1), st.integers(2, 8), st.integers(0, 6))
def test_random_graphs_are_bridgeless(seed, n, extra):
    g = random_bridgeless(np.random.default_rng(seed), n, extra, 3)
    assert g.n == n and is_connected(g) and not has_bridge(g)
