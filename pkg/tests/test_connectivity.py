import math
from itertools import combinations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwalk.connectivity import (
    algebraic_connectivity,
    connectivity_report,
    edge_connectivity,
    max_flow,
    normalized_algebraic_connectivity,
    vertex_connectivity,
)
from qwalk.graphs import (
    Graph,
    build,
    build_complete,
    build_cubic_lattice,
    build_hypercube,
    build_joined_complete,
    build_latin_square,
    build_paley,
    build_rook,
    build_simplex_complete,
)


def _connected_without(n, edges, drop_vertices=(), drop_edges=()):
    keep = [v for v in range(n) if v not in drop_vertices]
    if len(keep) <= 1:
        return True
    adj = {v: set() for v in keep}
    for u, v in edges:
        if (u, v) in drop_edges or u in drop_vertices or v in drop_vertices:
            continue
        adj[u].add(v)
        adj[v].add(u)
    seen, stack = {keep[0]}, [keep[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(keep)


def brute_edge_connectivity(g, limit=3):
    for k in range(limit + 1):
        for cut in combinations(g.edges, k):
            if not _connected_without(g.n, g.edges, drop_edges=set(cut)):
                return k
    return None


def brute_vertex_connectivity(g):
    for k in range(g.n - 1):
        for cut in combinations(range(g.n), k):
            if not _connected_without(g.n, g.edges, drop_vertices=set(cut)):
                return k
    return g.n - 1


def test_max_flow_examples():
    assert max_flow({"s": ["x", "y"], "x": ["t"], "y": ["t"]}, "s", "t") == 2
    assert max_flow({"s": ["x"], "x": ["t"]}, "s", "t") == 1
    k4 = {u: [v for v in range(4) if v != u] for u in range(4)}
    for s, t in combinations(range(4), 2):
        assert max_flow(k4, s, t) == 3
    assert max_flow({"s": ["x"], "t": []}, "s", "t") == 0
    assert max_flow({"s": ["x"]}, "s", "t") == 0
    with pytest.raises(ValueError):
        max_flow(k4, 1, 1)


@st.composite
def random_digraphs(draw):
    n = draw(st.integers(3, 9))
    arcs = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda a: a[0] != a[1])))
    return n, sorted(arcs)


@given(random_digraphs())
@settings(max_examples=80, deadline=None)
def test_max_flow_matches_networkx(data):
    n, arcs = data
    adj = {u: [] for u in range(n)}
    D = nx.DiGraph()
    D.add_nodes_from(range(n))
    for u, v in arcs:
        adj[u].append(v)
        D.add_edge(u, v, capacity=1)
    assert max_flow(adj, 0, n - 1) == nx.maximum_flow_value(D, 0, n - 1)


SMALL = [
    "complete:n=5",
    "paley:q=5",
    "rook:m=2",
    "rook:m=3",
    "hypercube:d=3",
    "cubic:d=1,side=6",
    "joined_complete:N=6",
    "joined_complete:N=8",
]


@pytest.mark.parametrize("spec", SMALL)
def test_edge_connectivity_brute_force(spec):
    g = build(spec)
    assert edge_connectivity(g) == brute_edge_connectivity(g, limit=4)


@pytest.mark.parametrize("spec", SMALL)
def test_vertex_connectivity_brute_force(spec):
    g = build(spec)
    assert vertex_connectivity(g) == brute_vertex_connectivity(g)


@st.composite
def random_connected_graphs(draw):
    n = draw(st.integers(2, 8))
    # random spanning tree plus extra edges keeps the graph connected
    edges = {tuple(sorted((v, draw(st.integers(0, v - 1))))) for v in range(1, n)}
    extra = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12))
    edges |= {tuple(sorted(e)) for e in extra if e[0] != e[1]}
    return Graph(n, tuple(edges))


@given(random_connected_graphs())
@settings(max_examples=60, deadline=None)
def test_connectivities_brute_force_random(g):
    kv, ke = vertex_connectivity(g), edge_connectivity(g)
    assert kv == brute_vertex_connectivity(g)
    brute_e = brute_edge_connectivity(g, limit=3)
    if brute_e is not None:
        assert ke == brute_e
    else:
        assert ke > 3
    assert kv <= ke <= int(g.degrees.min())


def test_disconnected_gives_zero():
    g = Graph(4, ((0, 1), (2, 3)))
    assert vertex_connectivity(g) == 0
    assert edge_connectivity(g) == 0
    assert algebraic_connectivity(g) == 0.0
    assert connectivity_report(g).connected is False


def test_known_integer_values():
    j = build_joined_complete(12)
    assert vertex_connectivity(j) == 1 and edge_connectivity(j) == 1
    assert vertex_connectivity(build_complete(6)) == 5
    assert vertex_connectivity(build_simplex_complete(5)) == 5
    assert edge_connectivity(build_hypercube(4)) == 4
    assert edge_connectivity(build_cubic_lattice(1, 5)) == 2


def test_algebraic_closed_forms():
    assert algebraic_connectivity(build_complete(6)) == pytest.approx(6.0, abs=1e-8)
    assert algebraic_connectivity(build_hypercube(4)) == pytest.approx(2.0, abs=1e-8)
    assert algebraic_connectivity(build_simplex_complete(5)) == pytest.approx(1.0, abs=1e-8)
    assert algebraic_connectivity(build_latin_square(5)) == pytest.approx(10.0, abs=1e-8)
    for q in (5, 13, 17):
        assert algebraic_connectivity(build_paley(q)) == pytest.approx((q - math.sqrt(q)) / 2, abs=1e-8)
    for m in (3, 4, 6):
        assert algebraic_connectivity(build_latin_square(m)) == pytest.approx(2 * m, abs=1e-8)
    for d, s in ((1, 7), (2, 8), (3, 4)):
        expected = 2 * (1 - math.cos(2 * math.pi / s))
        assert algebraic_connectivity(build_cubic_lattice(d, s)) == pytest.approx(expected, abs=1e-8)


def test_normalized_closed_forms():
    assert normalized_algebraic_connectivity(build_complete(6)) == pytest.approx(1.2, abs=1e-10)
    assert normalized_algebraic_connectivity(build_hypercube(4)) == pytest.approx(0.5, abs=1e-10)
    expected = 2 * (1 - math.cos(2 * math.pi / 8)) / 4
    assert expected == pytest.approx(0.1464, abs=1e-4)
    assert normalized_algebraic_connectivity(build_cubic_lattice(2, 8)) == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize(
    "spec", ["paley:q=13", "rook:m=4", "latin_square:m=4", "hypercube:d=5", "simplex_complete:M=4", "cubic:d=2,side=5"]
)
def test_normalized_is_algebraic_over_degree_for_regular(spec):
    g = build(spec)
    k = g.degrees[0]
    assert normalized_algebraic_connectivity(g) == pytest.approx(algebraic_connectivity(g) / k, abs=1e-10)


@pytest.mark.parametrize("spec", ["paley:q=13", "rook:m=3", "latin_square:m=4", "joined_complete:N=10", "simplex_complete:M=4"])
def test_report_ordering_invariant(spec):
    r = connectivity_report(build(spec))
    assert r.vertex_connectivity <= r.edge_connectivity <= r.degree_min
    assert r.algebraic_connectivity > 0 and r.normalized_algebraic_connectivity > 0


def test_report_rows():
    r = connectivity_report(build_complete(6))
    assert (r.vertex_connectivity, r.edge_connectivity) == (5, 5)
    assert r.algebraic_connectivity == pytest.approx(6.0, abs=1e-8)
    assert r.normalized_algebraic_connectivity == pytest.approx(1.2, abs=1e-8)
    r = connectivity_report(build_rook(3))
    assert (r.vertex_connectivity, r.edge_connectivity) == (4, 4)
    assert r.algebraic_connectivity == pytest.approx((9 - 3) / 2, abs=1e-8)
    r = connectivity_report(build_joined_complete(12))
    assert (r.vertex_connectivity, r.edge_connectivity) == (1, 1)
    assert (r.degree_min, r.degree_max) == (5, 6)


def test_algebraic_agrees_with_networkx():
    g = build_joined_complete(20)
    G = nx.Graph(list(g.edges))
    ref = np.sort(nx.laplacian_spectrum(G))[1]
    assert algebraic_connectivity(g) == pytest.approx(ref, abs=1e-9)
