import hypothesis
import hypothesis.strategies as st
import pytest

from flowroots.multigraph import MultiGraph, _bridges_of, components, has_bridge, is_connected
from flowroots.theta import enumerate_theta

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")

K2 = MultiGraph(2, [(0, 1)])
Z2 = MultiGraph(2, [(0, 1)] * 2)
Z3 = MultiGraph(2, [(0, 1)] * 3)
L = MultiGraph(1, [(0, 0)])
DT = MultiGraph(3, [(0, 1), (0, 1), (0, 2), (0, 2), (1, 2), (1, 2)])
K4 = MultiGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture(scope="session")
def fig5b():
    return enumerate_theta(4)[0].graph


@pytest.fixture(scope="session")
def phi5():
    return [r.graph for r in enumerate_theta(5)]


@st.composite
def multigraphs(draw, max_vertices=5, max_edges=8, loops=True, min_vertices=1):
    n = draw(st.integers(min_vertices, max_vertices))
    if n == 1 and not loops:
        return MultiGraph(1, [])
    vert = st.integers(0, n - 1)
    pair = st.tuples(vert, vert)
    if not loops:
        pair = pair.filter(lambda p: p[0] != p[1])
    edges = draw(st.lists(pair, max_size=max_edges))
    return MultiGraph(n, edges)


@st.composite
def bridgeless_graphs(draw, max_vertices=5, max_edges=8, loops=True):
    """Connected bridgeless graphs, built by doubling whatever bridges a random graph has."""
    g = draw(multigraphs(max_vertices, max_edges, loops, min_vertices=1))
    n = g.vertex_count
    edges = list(g.edges)
    # connect the components along a path, then double every bridge
    comps = components(g)
    for a, b in zip(comps, comps[1:]):
        edges.append((min(a), min(b)))
    h = MultiGraph(n, edges)
    extra = [h.edges[i] for i in _bridges_of(h, frozenset())]
    h = MultiGraph(n, list(h.edges) + extra)
    assert is_connected(h) and not has_bridge(h)
    return h


# criterion lines collected by test_acceptance, echoed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
