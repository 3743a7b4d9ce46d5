"""The family Θ generated from Z_3 by edge expansion, and the Φ conditions.

``G(e)`` replaces the edge ``e = u1u2`` by a new vertex joined to each of
``u1`` and ``u2`` by two parallel edges. Φ is the set of nonseparable graphs
on at least two vertices satisfying conditions (a'), (b') and (c') checked by
:func:`phi_membership`; the two families coincide, which
:func:`cross_validate_phi_theta` verifies exhaustively for small vertex counts.
"""
from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .flow import BudgetExceeded
from .multigraph import (
    MultiGraph,
    VertexSplit,
    block_count,
    delete_edge,
    identify,
    is_nonseparable,
    vertex_splits,
    contract_edge,
)

DEFAULT_BUDGET = 1_000_000


def z_graph(j: int) -> MultiGraph:
    """Two vertices joined by ``j`` parallel edges."""
    if j < 1:
        raise ValueError("Z_j needs at least one edge")
    return MultiGraph(2, [(0, 1)] * j)


def expand(g: MultiGraph, e: int) -> MultiGraph:
    """G(e): drop ``e`` and hang a new vertex off both its ends by doubled edges."""
    u1, u2 = g.edges[e]
    if u1 == u2:
        raise ValueError("cannot expand a loop")
    w = g.vertex_count
    edges = list(g.edges[:e] + g.edges[e + 1:]) + [(w, u1), (w, u1), (w, u2), (w, u2)]
    return MultiGraph(w + 1, edges)


@dataclass
class PhiRecord:
    graph: MultiGraph
    canonical: bytes
    construction: list = field(default_factory=list)
    condition_a: bool = True
    condition_b: bool = True
    condition_c: bool = True
    witness_a: Optional[int] = None
    witness_b: Optional[int] = None
    witness_c: Optional[VertexSplit] = None

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    @property
    def in_phi(self) -> bool:
        return self.condition_a and self.condition_b and self.condition_c

    def to_json(self) -> dict:
        return {
            "canonical": self.canonical.decode("ascii"),
            "vertex_count": self.graph.vertex_count,
            "edges": [list(e) for e in self.graph.edges],
            "construction": [[c.decode("ascii"), e] for c, e in self.construction],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PhiRecord":
        g = MultiGraph(obj["vertex_count"], [tuple(e) for e in obj["edges"]])
        return cls(
            graph=g,
            canonical=obj["canonical"].encode("ascii"),
            construction=[(c.encode("ascii"), e) for c, e in obj["construction"]],
        )


def _split_parity_ok(g: MultiGraph, split: VertexSplit) -> bool:
    sides = split.sides(g)
    for g1, g2 in (sides, sides[::-1]):
        vals = (block_count(identify(g1, 0, 1)), block_count(g1) - 1, block_count(g2))
        if len({v % 2 for v in vals}) != 1:
            return False
    return True


def phi_membership(g: MultiGraph) -> PhiRecord:
    """Evaluate conditions (a'), (b'), (c') on a nonseparable graph with >= 2 vertices."""
    if g.vertex_count < 2:
        raise ValueError("Φ membership needs at least two vertices")
    if not is_nonseparable(g):
        raise ValueError("the graph is separable")
    rec = PhiRecord(graph=g, canonical=g.code)
    for e in range(g.m):
        if not is_nonseparable(delete_edge(g, e)):
            rec.condition_a, rec.witness_a = False, e
            break
    for e in range(g.m):
        if block_count(contract_edge(g, e)) % 2:
            rec.condition_b, rec.witness_b = False, e
            break
    rec.condition_c = _condition_c(g, rec)
    return rec


def _condition_c(g: MultiGraph, rec: PhiRecord) -> bool:
    for split in vertex_splits(g):
        if len(split.side1_edges) < 2 or len(split.side2_edges) < 2:
            continue
        if not _split_parity_ok(g, split):
            rec.witness_c = split
            return False
    return True


def in_phi(g: MultiGraph) -> bool:
    return is_nonseparable(g) and g.vertex_count >= 2 and phi_membership(g).in_phi


# --------------------------------------------------------------------------
# level-by-level enumeration

class ThetaEnumerator:
    """Builds Θ_2, Θ_3, ... on demand, optionally persisting levels as JSON."""

    def __init__(self, budget: int = DEFAULT_BUDGET, cache_dir: Optional[os.PathLike] = None):
        self.budget = budget
        self.cache_dir = Path(cache_dir) if cache_dir is not None else None
        self.levels = {2: [PhiRecord(z_graph(3), z_graph(3).code)]}
        self.expansions = 0

    def _cache_file(self, k: int) -> Optional[Path]:
        return None if self.cache_dir is None else self.cache_dir / f"theta_{k}.json"

    def level(self, k: int) -> list:
        if k < 2:
            return []
        if k in self.levels:
            return self.levels[k]
        path = self._cache_file(k)
        if path is not None and path.exists():
            records = [PhiRecord.from_json(o) for o in json.loads(path.read_text())]
            self.levels[k] = records
            return records
        parents = self.level(k - 1)
        seen = {}
        for parent in parents:
            g = parent.graph
            done_pairs = set()
            for e, pair in enumerate(g.edges):
                # parallel copies expand to the same graph
                if pair in done_pairs:
                    continue
                done_pairs.add(pair)
                self.expansions += 1
                if self.expansions > self.budget:
                    raise BudgetExceeded(f"Θ expansion budget {self.budget} exhausted at level {k}")
                child = expand(g, e)
                code = child.code
                if code not in seen:
                    seen[code] = PhiRecord(child, code, parent.construction + [(parent.canonical, e)])
        records = [seen[c] for c in sorted(seen)]
        self.levels[k] = records
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps([r.to_json() for r in records], indent=1))
        return records


def enumerate_theta(k: int, budget: int = DEFAULT_BUDGET, cache_dir=None) -> list:
    """All members of Θ with exactly ``k`` vertices, deduplicated up to isomorphism."""
    if k < 2:
        return []
    return ThetaEnumerator(budget, cache_dir).level(k)


# --------------------------------------------------------------------------
# exhaustive cross-check against the Φ conditions

def two_connected_simple_graphs(n: int) -> list:
    """Representatives of 2-connected simple graphs on ``n >= 3`` vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    seen = {}
    for mask in range(1 << len(pairs)):
        edges = [p for i, p in enumerate(pairs) if mask >> i & 1]
        if len(edges) < n:
            continue
        g = MultiGraph(n, edges)
        if min(g.degrees) < 2 or not is_nonseparable(g):
            continue
        seen.setdefault(g.code, g)
    return [seen[c] for c in sorted(seen)]


def nonseparable_multigraphs(n: int, max_mult: int = 3, prefilter: bool = True) -> list:
    """Loopless nonseparable multigraphs on ``n`` vertices with multiplicities <= ``max_mult``.

    With ``prefilter`` only candidates that can satisfy (a') and (b') are
    produced: an edge of multiplicity one must leave the underlying simple
    graph 2-connected, and ``b(G/e) = (mult(e) - 1) + b(S/e)`` must be even.
    These are restatements of the two conditions, not extra assumptions.
    """
    if n == 2:
        return [z_graph(j) for j in range(1, max_mult + 1)]
    out = {}
    for s in two_connected_simple_graphs(n):
        choices = []
        for e, pair in enumerate(s.edges):
            allowed = list(range(1, max_mult + 1))
            if prefilter:
                removable = is_nonseparable(delete_edge(s, e))
                base = block_count(_simple(contract_edge(s, e)))
                allowed = [m for m in allowed if (m > 1 or removable) and (m - 1 + base) % 2 == 0]
            choices.append(allowed)
        for mults in itertools.product(*choices):
            edges = []
            for pair, k in zip(s.edges, mults):
                edges += [pair] * k
            g = MultiGraph(n, edges)
            out.setdefault(g.code, g)
    return [out[c] for c in sorted(out)]


def _simple(g: MultiGraph) -> MultiGraph:
    """Underlying graph with loops removed and parallel classes collapsed."""
    return MultiGraph(g.vertex_count, sorted({e for e in g.edges if e[0] != e[1]}))


@dataclass
class CrossValidation:
    max_vertices: int
    phi_counts: dict
    theta_counts: dict
    mismatches: dict
    candidates: dict

    @property
    def passed(self) -> bool:
        return not any(self.mismatches.values())


def cross_validate_phi_theta(max_vertices: int, budget: int = DEFAULT_BUDGET, max_mult: int = 3,
                             prefilter: bool = True) -> CrossValidation:
    """Compare the Φ-filtered exhaustive multigraphs with Θ, vertex count by vertex count."""
    enum = ThetaEnumerator(budget)
    phi_counts, theta_counts, mismatches, cands = {}, {}, {}, {}
    total = 0
    for n in range(2, max_vertices + 1):
        graphs = nonseparable_multigraphs(n, max_mult, prefilter)
        total += len(graphs)
        if total > budget:
            raise BudgetExceeded(f"{total} candidate graphs exceed budget {budget}")
        cands[n] = len(graphs)
        phi = {g.code for g in graphs if phi_membership(g).in_phi}
        theta = {r.canonical for r in enum.level(n)}
        phi_counts[n] = len(phi)
        theta_counts[n] = len(theta)
        mismatches[n] = sorted(phi ^ theta)
    return CrossValidation(max_vertices, phi_counts, theta_counts, mismatches, cands)
