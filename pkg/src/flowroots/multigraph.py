"""Immutable multigraphs (loops and parallel edges allowed) and their structure.

Vertices are the integers ``0..vertex_count-1``. Edges are unordered pairs kept
in sorted order, so an edge id is a position in ``MultiGraph.edges`` and two
graphs with the same vertex count and edge multiset compare equal.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional


class GraphFormatError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass(frozen=True)
class MultiGraph:
    vertex_count: int
    edges: tuple = ()

    def __post_init__(self):
        n = int(self.vertex_count)
        if n < 0:
            raise ValueError("negative vertex count")
        norm = []
        for e in self.edges:
            u, w = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= w < n):
                raise ValueError(f"edge {(u, w)} has an endpoint outside 0..{n - 1}")
            norm.append((u, w) if u <= w else (w, u))
        norm.sort()
        object.__setattr__(self, "vertex_count", n)
        object.__setattr__(self, "edges", tuple(norm))

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> list:
        """``adj[v]`` lists ``(neighbour, edge id)`` for non-loop edges at ``v``."""
        adj = [[] for _ in range(self.vertex_count)]
        for i, (u, w) in enumerate(self.edges):
            if u != w:
                adj[u].append((w, i))
                adj[w].append((u, i))
        return adj

    @cached_property
    def degrees(self) -> tuple:
        deg = [0] * self.vertex_count
        for u, w in self.edges:
            deg[u] += 1
            deg[w] += 1
        return tuple(deg)

    @cached_property
    def multiplicity(self) -> dict:
        out = {}
        for e in self.edges:
            out[e] = out.get(e, 0) + 1
        return out

    def loops(self) -> list:
        return [i for i, (u, w) in enumerate(self.edges) if u == w]

    def neighbours(self, v: int) -> set:
        return {w for w, _ in self.adjacency[v]}

    def is_loop(self, e: int) -> bool:
        u, w = self.edges[e]
        return u == w

    def parallel_class(self, e: int) -> list:
        pair = self.edges[e]
        return [i for i, f in enumerate(self.edges) if f == pair]

    def relabel(self, perm) -> "MultiGraph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return MultiGraph(self.vertex_count, [(perm[u], perm[w]) for u, w in self.edges])

    # -- canonical code ----------------------------------------------------

    @cached_property
    def code(self) -> bytes:
        return canonical_code(self)

    def __str__(self) -> str:
        return format_multigraph(self)


# --------------------------------------------------------------------------
# text format

def parse_multigraph(text: str) -> MultiGraph:
    """Parse the line format: ``# comment``, ``v <n>``, then ``e <u> <w>`` lines."""
    n: Optional[int] = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        tag = parts[0]
        try:
            nums = [int(p) for p in parts[1:]]
        except ValueError:
            raise GraphFormatError(lineno, f"non-integer field in {line!r}") from None
        if tag == "v":
            if n is not None:
                raise GraphFormatError(lineno, "repeated 'v' directive")
            if len(nums) != 1:
                raise GraphFormatError(lineno, "'v' takes exactly one count")
            if nums[0] < 0:
                raise GraphFormatError(lineno, "negative vertex count")
            n = nums[0]
        elif tag == "e":
            if n is None:
                raise GraphFormatError(lineno, "'e' before 'v'")
            if len(nums) != 2:
                raise GraphFormatError(lineno, "'e' takes exactly two vertex ids")
            u, w = nums
            if not (0 <= u < n and 0 <= w < n):
                raise GraphFormatError(lineno, f"vertex id out of range 0..{n - 1}")
            edges.append((u, w))
        else:
            raise GraphFormatError(lineno, f"unknown directive {tag!r}")
    if n is None:
        raise GraphFormatError(0, "missing 'v' directive")
    return MultiGraph(n, edges)


def format_multigraph(g: MultiGraph) -> str:
    lines = [f"v {g.vertex_count}"]
    lines += [f"e {u} {w}" for u, w in g.edges]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# elementary operations

def delete_edge(g: MultiGraph, e: int) -> MultiGraph:
    if not 0 <= e < g.m:
        raise IndexError(f"edge id {e} out of range")
    return MultiGraph(g.vertex_count, g.edges[:e] + g.edges[e + 1:])


def delete_edges(g: MultiGraph, ids: Iterable[int]) -> MultiGraph:
    drop = set(ids)
    return MultiGraph(g.vertex_count, [f for i, f in enumerate(g.edges) if i not in drop])


def add_edge(g: MultiGraph, u: int, w: int, times: int = 1) -> MultiGraph:
    return MultiGraph(g.vertex_count, g.edges + ((u, w),) * times)


def identify(g: MultiGraph, u: int, w: int) -> MultiGraph:
    """``G/uw``: merge ``w`` into ``u``; edges between them become loops."""
    if u == w:
        return g
    keep, gone = min(u, w), max(u, w)

    def f(x):
        if x == gone:
            return keep
        return x - 1 if x > gone else x

    return MultiGraph(g.vertex_count - 1, [(f(a), f(b)) for a, b in g.edges])


def contract_edge(g: MultiGraph, e: int) -> MultiGraph:
    """``G/e``: delete ``e`` and identify its ends; vertices are renumbered densely."""
    if not 0 <= e < g.m:
        raise IndexError(f"edge id {e} out of range")
    u, w = g.edges[e]
    if u == w:
        raise ValueError("cannot contract a loop")
    return identify(delete_edge(g, e), u, w)


def edge_subgraph(g: MultiGraph, ids: Iterable[int], keep: Iterable[int] = ()) -> tuple:
    """Subgraph on the given edges (plus vertices ``keep``), densely renumbered.

    Returns ``(subgraph, vertex map old->new)``.
    """
    ids = sorted(set(ids))
    verts = set(keep)
    for i in ids:
        verts.update(g.edges[i])
    order = sorted(verts)
    vmap = {v: k for k, v in enumerate(order)}
    sub = MultiGraph(len(order), [(vmap[g.edges[i][0]], vmap[g.edges[i][1]]) for i in ids])
    return sub, vmap


def components(g: MultiGraph) -> list:
    """Vertex sets of the connected components (loops ignored), sorted by min vertex."""
    parent = list(range(g.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, w in g.edges:
        ru, rw = find(u), find(w)
        if ru != rw:
            parent[max(ru, rw)] = min(ru, rw)
    groups = {}
    for v in range(g.vertex_count):
        groups.setdefault(find(v), []).append(v)
    return [groups[r] for r in sorted(groups)]


def is_connected(g: MultiGraph) -> bool:
    return g.vertex_count <= 1 or len(components(g)) == 1


def component_graphs(g: MultiGraph) -> list:
    """One densely renumbered graph per component that has at least one edge."""
    comp_of = {}
    for k, comp in enumerate(components(g)):
        for v in comp:
            comp_of[v] = k
    by_comp = {}
    for i, (u, _) in enumerate(g.edges):
        by_comp.setdefault(comp_of[u], []).append(i)
    return [edge_subgraph(g, ids)[0] for _, ids in sorted(by_comp.items())]


# --------------------------------------------------------------------------
# blocks, bridges and cut vertices

def _biconnected(g: MultiGraph):
    """Blocks (as edge-id lists, loops excluded) and articulation points."""
    n = g.vertex_count
    adj = g.adjacency
    disc = [-1] * n
    low = [0] * n
    blocks = []
    cut = set()
    t = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        root_children = 0
        stack = [(root, -1, iter(adj[root]))]
        estack = []
        while stack:
            v, pe, it = stack[-1]
            pushed = False
            for w, eid in it:
                if eid == pe:
                    continue
                if disc[w] == -1:
                    estack.append(eid)
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, eid, iter(adj[w])))
                    pushed = True
                    break
                if disc[w] < disc[v]:
                    estack.append(eid)
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if pushed:
                continue
            stack.pop()
            if not stack:
                break
            u = stack[-1][0]
            if low[v] < low[u]:
                low[u] = low[v]
            if low[v] >= disc[u]:
                blk = []
                while True:
                    f = estack.pop()
                    blk.append(f)
                    if f == pe:
                        break
                blocks.append(sorted(blk))
                if u == root:
                    root_children += 1
                else:
                    cut.add(u)
        if root_children >= 2:
            cut.add(root)
    return blocks, cut


@dataclass(frozen=True)
class StructuralSummary:
    degrees: tuple
    big_vertices: frozenset
    min_degree: int
    gamma_set: frozenset
    connected: bool
    bridges: frozenset
    cut_vertices: frozenset
    blocks: tuple
    nontrivial_block_count: int
    nonseparable: bool
    has_loops: bool = field(default=False)


def blocks_and_cuts(g: MultiGraph) -> tuple:
    """``(blocks, bridges, cut vertices)``; each loop is a block on its own."""
    blocks, cut = _biconnected(g)
    bridges = frozenset(b[0] for b in blocks if len(b) == 1)
    blocks = blocks + [[i] for i in g.loops()]
    blocks.sort()
    return tuple(frozenset(b) for b in blocks), bridges, frozenset(cut)


def block_count(g: MultiGraph) -> int:
    """b(G): the number of blocks that are not a bare vertex."""
    blocks, _ = _biconnected(g)
    return len(blocks) + len(g.loops())


def has_bridge(g: MultiGraph) -> bool:
    blocks, _ = _biconnected(g)
    return any(len(b) == 1 for b in blocks)


def is_nonseparable(g: MultiGraph) -> bool:
    if not is_connected(g):
        return False
    loops = g.loops()
    if loops:
        return g.m == 1 and g.vertex_count == 1
    _, cut = _biconnected(g)
    return not cut


def structural_summary(g: MultiGraph) -> StructuralSummary:
    deg = g.degrees
    n = g.vertex_count
    blocks, bridges, cut = blocks_and_cuts(g)
    connected = is_connected(g)
    loops = bool(g.loops())
    nonsep = connected and not cut and (not loops or (g.m == 1 and n == 1))
    gamma = frozenset(v for v in range(n) if deg[v] == 4 and len(g.neighbours(v)) == 2)
    return StructuralSummary(
        degrees=deg,
        big_vertices=frozenset(v for v in range(n) if deg[v] > 3),
        min_degree=min(deg) if n else 0,
        gamma_set=gamma,
        connected=connected,
        bridges=bridges,
        cut_vertices=cut,
        blocks=blocks,
        nontrivial_block_count=len(blocks),
        nonseparable=nonsep,
        has_loops=loops,
    )


def big_vertices(g: MultiGraph) -> set:
    """W(G): vertices of degree greater than 3."""
    return {v for v, d in enumerate(g.degrees) if d > 3}


def block_graphs(g: MultiGraph) -> list:
    """Each nontrivial block as its own densely renumbered graph."""
    blocks, _, _ = blocks_and_cuts(g)
    return [edge_subgraph(g, b)[0] for b in blocks]


# --------------------------------------------------------------------------
# edge cuts

@dataclass(frozen=True)
class EdgeCut:
    edges: frozenset
    sides: tuple  # two vertex frozensets
    proper: Optional[bool] = None


def _bridges_of(g: MultiGraph, removed: frozenset) -> list:
    sub = delete_edges(g, removed)
    keep = [i for i in range(g.m) if i not in removed]
    blocks, _ = _biconnected(sub)
    return sorted(keep[b[0]] for b in blocks if len(b) == 1)


def _bond_sides(g: MultiGraph, cut: frozenset):
    """Vertex sides if ``cut`` is a bond of connected ``g``, else None."""
    comps = components(delete_edges(g, cut))
    if len(comps) != 2:
        return None
    side = set(comps[0])
    for i in cut:
        u, w = g.edges[i]
        if (u in side) == (w in side):
            return None
    return frozenset(comps[0]), frozenset(comps[1])


def edge_cuts(g: MultiGraph, k: int) -> list:
    """All minimal edge cuts (bonds) of size ``k`` in connected ``g``.

    Found by deleting every (k-1)-subset of non-loop edges and reading off the
    bridges of what remains. For ``k == 3`` the ``proper`` flag is False exactly
    for the three edges at a degree-3 vertex.
    """
    if k < 1:
        raise ValueError("cut size must be positive")
    nonloop = [i for i in range(g.m) if not g.is_loop(i)]
    found = {}
    for rest in itertools.combinations(nonloop, k - 1):
        rest = frozenset(rest)
        for b in _bridges_of(g, rest):
            cut = rest | {b}
            if cut in found:
                continue
            sides = _bond_sides(g, cut)
            if sides is not None:
                found[cut] = sides
    out = []
    for cut in sorted(found, key=sorted):
        sides = found[cut]
        proper = None
        if k == 3:
            proper = not (len(sides[0]) == 1 or len(sides[1]) == 1) or _side_has_loops(g, sides)
        out.append(EdgeCut(cut, sides, proper))
    return out


def _side_has_loops(g: MultiGraph, sides) -> bool:
    # a one-vertex side is a degree-3 star only when it carries no loops
    for s in sides:
        if len(s) == 1:
            v = next(iter(s))
            if any(u == w == v for u, w in g.edges):
                return True
    return False


def contract_side(g: MultiGraph, side: frozenset) -> MultiGraph:
    """Collapse the vertex set ``side`` (assumed connected) to one vertex, dropping its inner edges."""
    keep = [v for v in range(g.vertex_count) if v not in side]
    vmap = {v: k for k, v in enumerate(keep)}
    z = len(keep)
    edges = []
    for u, w in g.edges:
        a = vmap.get(u, z)
        b = vmap.get(w, z)
        if a == z and b == z:
            continue
        edges.append((a, b))
    return MultiGraph(z + 1, edges)


# --------------------------------------------------------------------------
# two-vertex splits

@dataclass(frozen=True)
class VertexSplit:
    """Edge bipartition of G into two subgraphs meeting in ``{u1, u2}``."""

    pair: tuple
    side1_edges: frozenset
    side2_edges: frozenset

    def sides(self, g: MultiGraph) -> tuple:
        """The two sides as graphs with ``u1 -> 0`` and ``u2 -> 1``."""
        return split_side(g, self.pair, self.side1_edges), split_side(g, self.pair, self.side2_edges)


def split_side(g: MultiGraph, pair, ids) -> MultiGraph:
    u1, u2 = pair
    verts = {u1, u2}
    for i in ids:
        verts.update(g.edges[i])
    order = [u1, u2] + sorted(verts - {u1, u2})
    vmap = {v: k for k, v in enumerate(order)}
    return MultiGraph(len(order), [(vmap[g.edges[i][0]], vmap[g.edges[i][1]]) for i in sorted(ids)])


def split_pieces(g: MultiGraph, u1: int, u2: int) -> list:
    """Components of G-{u1,u2} with their attachment edges, plus every edge
    living only on ``{u1, u2}`` as a piece of its own."""
    rest = [v for v in range(g.vertex_count) if v not in (u1, u2)]
    parent = {v: v for v in rest}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, w in g.edges:
        if u in parent and w in parent:
            a, b = find(u), find(w)
            if a != b:
                parent[max(a, b)] = min(a, b)
    pieces = {}
    free = []
    for i, (u, w) in enumerate(g.edges):
        if u in parent:
            pieces.setdefault(find(u), []).append(i)
        elif w in parent:
            pieces.setdefault(find(w), []).append(i)
        else:
            free.append(i)
    out = [frozenset(pieces[r]) for r in sorted(pieces)]
    out += [frozenset([i]) for i in free]
    return out


def vertex_splits(g: MultiGraph, pair=None) -> list:
    """Every split of the edge set into two nonempty sides meeting only in a vertex pair.

    Pieces (see :func:`split_pieces`) are distributed over the two sides in all
    ways, up to swapping the sides.
    """
    pairs = [pair] if pair is not None else itertools.combinations(range(g.vertex_count), 2)
    out = []
    for u1, u2 in pairs:
        pieces = split_pieces(g, u1, u2)
        p = len(pieces)
        if p < 2:
            continue
        # the last piece always goes to side 2, which removes the swap symmetry
        for mask in range(1, 1 << (p - 1)):
            s1, s2 = set(), set()
            for j, piece in enumerate(pieces):
                (s1 if j < p - 1 and mask >> j & 1 else s2).update(piece)
            out.append(VertexSplit((u1, u2), frozenset(s1), frozenset(s2)))
    return out


# --------------------------------------------------------------------------
# canonical labelling

def _mult_matrix(g: MultiGraph) -> list:
    n = g.vertex_count
    M = [[0] * n for _ in range(n)]
    for u, w in g.edges:
        M[u][w] += 1
        if u != w:
            M[w][u] += 1
    return M


def _refine(M, colors: list) -> list:
    """Equitable refinement; cells keep their relative order and only split."""
    n = len(colors)
    ncolors = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            row = M[v]
            nb = sorted((colors[w], row[w]) for w in range(n) if w != v and row[w])
            sigs.append((colors[v], tuple(nb)))
        ranks = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == ncolors:
            return new
        colors, ncolors = new, len(ranks)


def canonical_code(g: MultiGraph) -> bytes:
    """Isomorphism-invariant code: equal codes iff isomorphic multigraphs.

    Colour refinement on the multiplicity matrix, then individualisation of
    each vertex of the first non-singleton cell, taking the lexicographically
    least relabelled matrix over all leaves of the search.
    """
    n = g.vertex_count
    M = _mult_matrix(g)
    start = [(M[v][v], sum(M[v]) + M[v][v]) for v in range(n)]
    ranks = {s: k for k, s in enumerate(sorted(set(start)))}
    colors = _refine(M, [ranks[s] for s in start])
    best = None
    stack = [colors]
    while stack:
        cols = stack.pop()
        if len(set(cols)) == n:
            perm = sorted(range(n), key=cols.__getitem__)
            key = tuple(M[perm[i]][perm[j]] for i in range(n) for j in range(i, n))
            if best is None or key < best:
                best = key
            continue
        counts = {}
        for c in cols:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for v in range(n):
            if cols[v] == target:
                ind = [2 * c + (1 if c == target and x != v else 0) for x, c in enumerate(cols)]
                stack.append(_refine(M, ind))
    body = ",".join(map(str, best)) if best else ""
    return f"{n}:{body}".encode("ascii")


def is_isomorphic(g: MultiGraph, h: MultiGraph) -> bool:
    return g.vertex_count == h.vertex_count and g.m == h.m and g.code == h.code


def from_code(code: bytes) -> MultiGraph:
    """Rebuild a representative graph from a canonical code."""
    text = code.decode("ascii") if isinstance(code, bytes) else code
    head, _, body = text.partition(":")
    n = int(head)
    vals = [int(x) for x in body.split(",")] if body else []
    edges = []
    k = 0
    for i in range(n):
        for j in range(i, n):
            edges += [(i, j)] * vals[k]
            k += 1
    return MultiGraph(n, edges)
