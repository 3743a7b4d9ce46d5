"""Graph corpora: exhaustive bridgeless multigraphs under size caps plus seeded samples.

Connected simple graphs are grown one vertex at a time (every connected graph
has a vertex whose removal keeps it connected), deduplicated by canonical
code. Multigraphs are then obtained by assigning multiplicities; an edge of
the simple graph that is a bridge there must get multiplicity at least two.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, replace
from typing import Iterator

import numpy as np

from .multigraph import MultiGraph, _bridges_of

_SPEC_RE = re.compile(r"^v(\d+)e(\d+)(?:m(\d+))?(?:l(\d+))?(?:r(\d+))?$")


@dataclass(frozen=True)
class CorpusSpec:
    """Connected bridgeless multigraphs within the given caps.

    ``max_loops`` bounds the total number of loops (0 gives loopless graphs);
    when loops are allowed the one-vertex bouquets are included too.
    """

    max_vertices: int = 6
    max_edges: int = 11
    max_mult: int = 3
    min_vertices: int = 2
    random_samples: int = 0
    seed: int = 0
    max_loops: int = 0

    @property
    def name(self) -> str:
        s = f"v{self.max_vertices}e{self.max_edges}m{self.max_mult}"
        s += f"l{self.max_loops}" if self.max_loops else ""
        return s + (f"r{self.random_samples}" if self.random_samples else "")


NAMED = {
    "default": CorpusSpec(6, 11, 3),
    "v6e11": CorpusSpec(6, 11, 3),
    # every connected bridgeless multigraph with at most 9 edges
    "e9": CorpusSpec(9, 9, 9, min_vertices=1, max_loops=9),
    "e9-loopless": CorpusSpec(9, 9, 9),
    "small": CorpusSpec(5, 8, 3),
}


def parse_corpus_spec(text: str, seed: int = 0) -> CorpusSpec:
    """A named corpus or ``v<N>e<M>[m<K>][l<L>][r<R>]``.

    N caps vertices, M edges, K the multiplicity of a vertex pair, L the
    number of loops and R the number of extra seeded random samples.
    """
    if text in NAMED:
        spec = NAMED[text]
        return replace(spec, seed=seed)
    m = _SPEC_RE.match(text)
    if not m:
        raise ValueError(f"unrecognised corpus spec {text!r}")
    v, e, mult, loops, r = m.groups()
    return CorpusSpec(int(v), int(e), int(mult) if mult else int(e), 2, int(r or 0), seed,
                      int(loops or 0))


def connected_simple_graphs(max_vertices: int, max_edges: int) -> dict:
    """``{n: [graphs]}`` of connected simple graphs with ``n <= max_vertices``, ``|E| <= max_edges``."""
    levels = {1: [MultiGraph(1, [])]}
    for n in range(2, max_vertices + 1):
        seen = {}
        for g in levels[n - 1]:
            room = max_edges - g.m
            if room < 1:
                continue
            for size in range(1, min(room, n - 1) + 1):
                for nbrs in itertools.combinations(range(n - 1), size):
                    h = MultiGraph(n, list(g.edges) + [(u, n - 1) for u in nbrs])
                    seen.setdefault(h.code, h)
        levels[n] = [seen[c] for c in sorted(seen)]
    return levels


def _multiplicity_assignments(lows: list, cap: int, budget: int) -> Iterator[tuple]:
    """Tuples ``m`` with ``lows[i] <= m[i] <= cap`` and ``sum(m) <= budget``."""
    k = len(lows)
    suffix = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = suffix[i + 1] + lows[i]

    def rec(i, left, acc):
        if i == k:
            yield tuple(acc)
            return
        hi = min(cap, left - suffix[i + 1])
        for m in range(lows[i], hi + 1):
            acc.append(m)
            yield from rec(i + 1, left - m, acc)
            acc.pop()

    if suffix[0] <= budget:
        yield from rec(0, budget, [])


def _with_multiplicities(s: MultiGraph, mults) -> MultiGraph:
    edges = []
    for pair, k in zip(s.edges, mults):
        edges += [pair] * k
    return MultiGraph(s.vertex_count, edges)


def bridgeless_multigraphs(spec: CorpusSpec) -> list:
    """The exhaustive part of the corpus, sorted by canonical code."""
    simple = connected_simple_graphs(spec.max_vertices, spec.max_edges)
    out = {}
    for n in range(max(spec.min_vertices, 2), spec.max_vertices + 1):
        for s in simple.get(n, []):
            bridges = set(_bridges_of(s, frozenset()))
            lows = [2 if e in bridges else 1 for e in range(s.m)]
            if max(lows) > spec.max_mult:
                continue
            for mults in _multiplicity_assignments(lows, spec.max_mult, spec.max_edges):
                g = _with_multiplicities(s, mults)
                out.setdefault(g.code, g)
    if spec.max_loops:
        base = list(out.values())
        if spec.min_vertices <= 1:
            base.append(MultiGraph(1, []))
        for g in base:
            room = min(spec.max_loops, spec.max_edges - g.m)
            for loops in _multiplicity_assignments([0] * g.n, room, room):
                if sum(loops) == 0:
                    continue
                h = MultiGraph(g.n, list(g.edges) + [(v, v) for v, k in enumerate(loops) for _ in range(k)])
                out.setdefault(h.code, h)
    return [out[c] for c in sorted(out)]


def random_bridgeless(rng: np.random.Generator, n: int, extra: int, max_mult: int) -> MultiGraph:
    """A random connected bridgeless multigraph on ``n`` vertices.

    Starts from a random spanning tree, adds ``extra`` random edges, then
    doubles each remaining bridge.
    """
    perm = rng.permutation(n)
    edges = [(int(perm[i]), int(perm[rng.integers(0, i)])) for i in range(1, n)]
    for _ in range(extra):
        u, w = rng.choice(n, size=2, replace=False)
        edges.append((int(u), int(w)))
    g = MultiGraph(n, edges)
    counts = {}
    for e in g.edges:
        counts[e] = min(counts.get(e, 0) + 1, max_mult)
    g = MultiGraph(n, [e for e, c in counts.items() for _ in range(c)])
    for b in _bridges_of(g, frozenset()):
        u, w = g.edges[b]
        counts[(u, w)] = max(counts[(u, w)], 2)
    return MultiGraph(n, [e for e, c in sorted(counts.items()) for _ in range(c)])


def random_samples(count: int, seed: int, max_vertices: int = 9, max_mult: int = 3) -> list:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(3, max_vertices + 1))
        extra = int(rng.integers(1, n + 1))
        out.append(random_bridgeless(rng, n, extra, max_mult))
    return out


def build_corpus(spec: CorpusSpec) -> list:
    """Exhaustive graphs plus ``spec.random_samples`` seeded samples, deduplicated and sorted."""
    graphs = {g.code: g for g in bridgeless_multigraphs(spec)}
    if spec.random_samples:
        for g in random_samples(spec.random_samples, spec.seed, max_mult=spec.max_mult):
            graphs.setdefault(g.code, g)
    return [graphs[c] for c in sorted(graphs)]


def load_corpus(text: str, seed: int = 0) -> list:
    return build_corpus(parse_corpus_spec(text, seed))


__all__ = [
    "CorpusSpec", "NAMED", "bridgeless_multigraphs", "build_corpus", "connected_simple_graphs",
    "load_corpus", "parse_corpus_spec", "random_bridgeless", "random_samples",
]
