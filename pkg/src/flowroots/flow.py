"""Flow polynomials by deletion-contraction with factorization shortcuts.

The reduction pipeline for ``F(G)`` tries, in order: empty edge set, a bridge,
disconnection, loops, a cut vertex (block product), a nontrivial 2-edge-cut,
an edge whose deletion leaves a cut vertex, a proper 3-edge-cut, and finally
``F(G/e) - F(G-e)``. Every product-over-(λ-1) rule is an exact polynomial
division; a nonzero remainder raises :class:`~flowroots.polynomial.DivisionError`.
"""
from __future__ import annotations

import itertools
import threading
from collections import Counter, OrderedDict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .multigraph import (
    MultiGraph,
    _biconnected,
    _bridges_of,
    add_edge,
    block_count,
    block_graphs,
    component_graphs,
    components,
    contract_edge,
    contract_side,
    delete_edge,
    delete_edges,
    edge_subgraph,
    is_connected,
    structural_summary,
)
from .polynomial import LAMBDA_MINUS_1, LAMBDA_MINUS_2, ONE, ZERO, IntPolynomial, strip_integer_roots

RULES = ("loop", "bridge", "block-factor", "separable-minus-e", "2-cut", "3-cut", "delete-contract")

_LM1_LM2 = LAMBDA_MINUS_1 * LAMBDA_MINUS_2


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class EngineConfig:
    shortcuts: bool = True
    max_cache: Optional[int] = 200_000
    min_memo_edges: int = 3
    max_nodes: Optional[int] = None  # recursion nodes per engine before BudgetExceeded


@dataclass
class FlowResult:
    polynomial: IntPolynomial
    p_exponent: int
    reductions_used: dict = field(default_factory=dict)
    cache_hits: int = 0


class FlowEngine:
    """Memoizing flow-polynomial evaluator.

    The cache is keyed by canonical code and guarded by a lock, so one engine
    may be shared between threads; separate engines never share state.
    """

    def __init__(self, config: Optional[EngineConfig] = None, **kw):
        self.config = config or EngineConfig(**kw)
        self._cache: OrderedDict = OrderedDict()
        self._lock = threading.Lock()
        self.counters: Counter = Counter()
        self.cache_hits = 0
        self.nodes = 0

    # -- cache -------------------------------------------------------------

    def _get(self, key):
        with self._lock:
            val = self._cache.get(key)
            if val is not None:
                self._cache.move_to_end(key)
                self.cache_hits += 1
            return val

    def _put(self, key, val):
        with self._lock:
            self._cache[key] = val
            self._cache.move_to_end(key)
            cap = self.config.max_cache
            if cap is not None:
                while len(self._cache) > cap:
                    self._cache.popitem(last=False)

    def clear(self):
        with self._lock:
            self._cache.clear()

    # -- public ------------------------------------------------------------

    def polynomial(self, g: MultiGraph) -> IntPolynomial:
        return self._flow(g)

    def run(self, g: MultiGraph) -> FlowResult:
        before = Counter(self.counters)
        hits = self.cache_hits
        poly = self._flow(g)
        used = {r: self.counters[r] - before[r] for r in RULES}
        return FlowResult(poly, p_exponent(g), used, self.cache_hits - hits)

    # -- recursion ---------------------------------------------------------

    def _flow(self, g: MultiGraph) -> IntPolynomial:
        if not g.edges:
            return ONE
        memo = g.m >= self.config.min_memo_edges
        if memo:
            key = g.code
            hit = self._get(key)
            if hit is not None:
                return hit
        self.nodes += 1
        if self.config.max_nodes is not None and self.nodes > self.config.max_nodes:
            raise BudgetExceeded(f"flow recursion exceeded {self.config.max_nodes} nodes")
        val = self._reduce(g) if self.config.shortcuts else self._recurrence(g)
        if memo:
            self._put(key, val)
        return val

    def _recurrence(self, g: MultiGraph) -> IntPolynomial:
        """The plain recurrence: bridge, union, loop, delete-contract."""
        blocks, _ = _biconnected(g)
        if any(len(b) == 1 for b in blocks):
            self.counters["bridge"] += 1
            return ZERO
        parts = component_graphs(g)
        if len(parts) > 1:
            out = ONE
            for h in parts:
                out = out * self._flow(h)
            return out
        loops = g.loops()
        if loops:
            self.counters["loop"] += 1
            return LAMBDA_MINUS_1 * self._flow(delete_edge(g, loops[0]))
        return self._delete_contract(g)

    def _reduce(self, g: MultiGraph) -> IntPolynomial:
        blocks, cut = _biconnected(g)
        if any(len(b) == 1 for b in blocks):
            self.counters["bridge"] += 1
            return ZERO
        loops = g.loops()
        if loops:
            self.counters["loop"] += len(loops)
            rest = delete_edges(g, loops)
            return LAMBDA_MINUS_1 ** len(loops) * self._flow(rest)
        if len(blocks) > 1:
            # covers disconnection as well: the product over blocks is the
            # product over components of their block products
            self.counters["block-factor"] += 1
            out = ONE
            for h in block_graphs(g):
                out = out * self._flow(h)
                if not out:
                    break
            return out
        if min(g.degrees) == 0:
            return self._flow(edge_subgraph(g, range(g.m))[0])
        # g is now a single loopless block with at least two edges
        step = self._two_cut_or_vertex(g)
        if step is not None:
            return step
        step = self._three_cut(g)
        if step is not None:
            return step
        return self._delete_contract(g)

    def _two_cut_or_vertex(self, g: MultiGraph) -> Optional[IntPolynomial]:
        """Try a nontrivial 2-edge-cut, then an edge whose deletion leaves a cut vertex."""
        vertex_rule = None
        for e in range(g.m):
            h = delete_edge(g, e)
            hb, hcut = _biconnected(h)
            keep = [i for i in range(g.m) if i != e]
            for b in hb:
                if len(b) != 1:
                    continue
                f = keep[b[0]]
                comps = components(delete_edges(g, (e, f)))
                if len(comps) == 2 and len(comps[0]) > 1 and len(comps[1]) > 1:
                    self.counters["2-cut"] += 1
                    s1, s2 = frozenset(comps[0]), frozenset(comps[1])
                    g1 = contract_side(g, s2)
                    g2 = contract_side(g, s1)
                    return (self._flow(g1) * self._flow(g2)).exact_div(LAMBDA_MINUS_1)
            if vertex_rule is None and hcut:
                vertex_rule = (e, min(hcut))
        if vertex_rule is None:
            return None
        self.counters["separable-minus-e"] += 1
        g1, g2 = separable_minus_e_parts(g, *vertex_rule)
        return (self._flow(g1) * self._flow(g2)).exact_div(LAMBDA_MINUS_1)

    def _three_cut(self, g: MultiGraph) -> Optional[IntPolynomial]:
        for pair in itertools.combinations(range(g.m), 2):
            rest = frozenset(pair)
            for b in _bridges_of(g, rest):
                cut = rest | {b}
                comps = components(delete_edges(g, cut))
                if len(comps) == 2 and len(comps[0]) > 1 and len(comps[1]) > 1:
                    self.counters["3-cut"] += 1
                    s1, s2 = frozenset(comps[0]), frozenset(comps[1])
                    g1 = contract_side(g, s2)
                    g2 = contract_side(g, s1)
                    return (self._flow(g1) * self._flow(g2)).exact_div(_LM1_LM2)
        return None

    def _delete_contract(self, g: MultiGraph) -> IntPolynomial:
        self.counters["delete-contract"] += 1
        e = pick_edge(g)
        return self._flow(contract_edge(g, e)) - self._flow(delete_edge(g, e))


def pick_edge(g: MultiGraph) -> int:
    """First edge of a largest parallel class."""
    best, best_size = 0, 0
    i = 0
    edges = g.edges
    while i < len(edges):
        j = i
        while j < len(edges) and edges[j] == edges[i]:
            j += 1
        if edges[i][0] != edges[i][1] and j - i > best_size:
            best, best_size = i, j - i
        i = j
    return best


def separable_minus_e_parts(g: MultiGraph, e: int, v: int) -> tuple:
    """The graphs ``H_i + v u_i`` for an edge ``e = u1u2`` with ``v`` a cut vertex of ``G - e``."""
    u1, u2 = g.edges[e]
    h = delete_edge(g, e)
    comps = components(MultiGraph(g.vertex_count, [f for f in h.edges if v not in f]))
    comp_u1 = next(set(c) for c in comps if u1 in c)
    if u2 in comp_u1:
        raise ValueError("cut vertex does not separate the ends of the edge")
    ids1 = [i for i, (a, b) in enumerate(h.edges) if a in comp_u1 or b in comp_u1]
    ids2 = [i for i in range(h.m) if i not in set(ids1)]
    g1 = _side_plus(h, ids1, v, u1)
    g2 = _side_plus(h, ids2, v, u2)
    return g1, g2


def _side_plus(h: MultiGraph, ids, v, u) -> MultiGraph:
    verts = {v, u}
    for i in ids:
        verts.update(h.edges[i])
    order = sorted(verts)
    vmap = {x: k for k, x in enumerate(order)}
    edges = [(vmap[h.edges[i][0]], vmap[h.edges[i][1]]) for i in ids] + [(vmap[v], vmap[u])]
    return MultiGraph(len(order), edges)


# --------------------------------------------------------------------------
# module-level conveniences

_shared = FlowEngine()


def shared_engine() -> FlowEngine:
    return _shared


def flow_polynomial(g: MultiGraph, engine: Optional[FlowEngine] = None, shortcuts: bool = True) -> FlowResult:
    """Exact flow polynomial with reduction statistics.

    Without an explicit engine a fresh one is used, so the counters are a
    function of the input alone.
    """
    if engine is None:
        engine = FlowEngine(shortcuts=shortcuts)
    return engine.run(g)


def flow_poly(g: MultiGraph) -> IntPolynomial:
    """Flow polynomial through the process-wide memo cache."""
    return _shared.polynomial(g)


def p_exponent(g: MultiGraph) -> int:
    """p(G) = |E| - |V| + b(G) - 1."""
    return g.m - g.vertex_count + block_count(g) - 1


def q_value(g: MultiGraph, lam, poly: Optional[IntPolynomial] = None) -> tuple:
    """``(sign, value, p(G))`` of ``Q(G, λ) = (-1)^p(G) F(G, λ)`` at a rational point."""
    if not is_connected(g):
        raise ValueError("Q(G, λ) is defined for connected graphs")
    lam = Fraction(lam)
    if poly is None:
        poly = flow_poly(g)
    p = p_exponent(g)
    val = Fraction(poly(lam)) * (-1) ** p
    return (val > 0) - (val < 0), val, p


# --------------------------------------------------------------------------
# the counting oracle

DEFAULT_COUNT_BUDGET = 5_000_000


def cycle_basis_matrix(g: MultiGraph) -> np.ndarray:
    """Fundamental cycles (rows) against edges (columns) for the orientation u -> w of each (u, w)."""
    n, m = g.vertex_count, g.m
    parent = [-1] * n
    parent_edge = [-1] * n
    depth = [0] * n
    seen = [False] * n
    tree = set()
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        for x in queue:
            for y, eid in g.adjacency[x]:
                if not seen[y]:
                    seen[y] = True
                    parent[y], parent_edge[y], depth[y] = x, eid, depth[x] + 1
                    tree.add(eid)
                    queue.append(y)
    rows = []
    for eid, (u, w) in enumerate(g.edges):
        if eid in tree:
            continue
        row = np.zeros(m, dtype=np.int64)
        row[eid] = 1
        # send one unit from w back to u along the tree
        a, b = w, u
        while a != b:
            if depth[a] >= depth[b]:
                pe = parent_edge[a]
                row[pe] += -1 if g.edges[pe][1] == a else 1
                a = parent[a]
            else:
                pe = parent_edge[b]
                row[pe] += 1 if g.edges[pe][1] == b else -1
                b = parent[b]
        rows.append(row)
    if not rows:
        return np.zeros((0, m), dtype=np.int64)
    return np.vstack(rows)


def flow_count(g: MultiGraph, k: int, budget: int = DEFAULT_COUNT_BUDGET) -> int:
    """Number of nowhere-zero Z_k-flows, by enumerating the cycle space.

    A flow is determined by its values on the non-tree edges, so only vectors
    with nonzero entries there are enumerated and the tree edges are checked.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    basis = cycle_basis_matrix(g)
    d = basis.shape[0]
    if g.m == 0:
        return 1
    total = (k - 1) ** d
    if total > budget:
        raise BudgetExceeded(f"{total} cycle-space vectors exceed budget {budget}")
    if d == 0:
        return 0
    count = 0
    chunk = max(1, 200_000 // max(d, 1))
    it = itertools.product(range(1, k), repeat=d)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            break
        coeffs = np.array(block, dtype=np.int64)
        flows = (coeffs @ basis) % k
        count += int(np.count_nonzero(np.all(flows != 0, axis=1)))
    return count


# --------------------------------------------------------------------------
# audits that only need the polynomial

WAKELIN_BELOW_1 = (Fraction(-3), Fraction(-1), Fraction(0), Fraction(1, 2))
WAKELIN_ABOVE_1 = (Fraction(1001, 1000), Fraction(28, 27), Fraction(11, 10), Fraction(32, 27))


@dataclass
class WakelinReport:
    multiplicity_at_1: int
    blocks: int
    clause_a: bool
    clause_b: bool
    clause_c: bool

    @property
    def passed(self) -> bool:
        return self.clause_a and self.clause_b and self.clause_c


def wakelin_audit(g: MultiGraph, poly: Optional[IntPolynomial] = None) -> WakelinReport:
    """Check the sign pattern below 1, the multiplicity b(G) at 1, and the sign on (1, 32/27]."""
    s = structural_summary(g)
    if s.bridges:
        raise ValueError("the graph has a bridge")
    if not s.connected:
        raise ValueError("the graph is disconnected")
    if poly is None:
        poly = flow_poly(g)
    mult = strip_integer_roots(poly, [1])[0][1]
    b = s.nontrivial_block_count
    sign_a = (-1) ** (g.m - g.vertex_count + 1)
    sign_c = (-1) ** (g.m - g.vertex_count + b - 1)
    clause_a = all(_sgn(poly(x)) == sign_a for x in WAKELIN_BELOW_1)
    clause_c = all(_sgn(poly(x)) == sign_c for x in WAKELIN_ABOVE_1)
    return WakelinReport(mult, b, clause_a, mult == b, clause_c)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def two_block_identity_sides(g: MultiGraph, split) -> tuple:
    """``(G1, G2, G1+uv, G2+uv)`` for a vertex split, with ``u, v`` at ids 0 and 1."""
    g1, g2 = split.sides(g)
    return g1, g2, add_edge(g1, 0, 1), add_edge(g2, 0, 1)


def verify_two_block_identity(g: MultiGraph, split, engine: Optional[FlowEngine] = None) -> bool:
    """(λ-1) F(G) == F(G1+uv) F(G2+uv) + (λ-1) F(G1) F(G2), as polynomials."""
    if not split.side1_edges or not split.side2_edges:
        raise ValueError("both sides of a split need edges")
    if split.side1_edges & split.side2_edges or len(split.side1_edges | split.side2_edges) != g.m:
        raise ValueError("split sides must partition the edge set")
    eng = engine or _shared
    g1, g2, g1p, g2p = two_block_identity_sides(g, split)
    lhs = LAMBDA_MINUS_1 * eng.polynomial(g)
    rhs = eng.polynomial(g1p) * eng.polynomial(g2p) + LAMBDA_MINUS_1 * eng.polynomial(g1) * eng.polynomial(g2)
    return lhs == rhs
