"""Vertex, edge, algebraic and normalized algebraic connectivity."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import asdict, dataclass
from typing import Hashable, Mapping, Iterable

import numpy as np

from .graphs import Graph, matrices

log = logging.getLogger(__name__)


def max_flow(arcs: Mapping[Hashable, Iterable[Hashable]], s: Hashable, t: Hashable) -> int:
    """Maximum s-t flow where every arc ``u -> v`` in ``arcs[u]`` has capacity 1."""
    if s == t:
        raise ValueError("source and sink must differ")
    residual: dict[Hashable, dict[Hashable, int]] = {}
    for u, vs in arcs.items():
        for v in vs:
            residual.setdefault(u, {})
            residual.setdefault(v, {})
            residual[u][v] = residual[u].get(v, 0) + 1
            residual[v].setdefault(u, 0)
    if s not in residual or t not in residual:
        return 0

    flow = 0
    while True:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            u = queue.popleft()
            for v, cap in residual[u].items():
                if cap > 0 and v not in parent:
                    parent[v] = u
                    queue.append(v)
        if t not in parent:
            return flow
        v = t
        while parent[v] is not None:
            u = parent[v]
            residual[u][v] -= 1
            residual[v][u] += 1
            v = u
        flow += 1


def _edge_arcs(g: Graph) -> dict[int, tuple[int, ...]]:
    return {v: g.neighbors[v] for v in range(g.n)}


def _split_arcs(g: Graph) -> dict[tuple[int, int], list[tuple[int, int]]]:
    # (v, 0) is v's in-node, (v, 1) its out-node
    arcs: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for v in range(g.n):
        arcs[(v, 0)] = [(v, 1)]
        arcs[(v, 1)] = [(u, 0) for u in g.neighbors[v]]
    return arcs


def local_vertex_connectivity(g: Graph, s: int, t: int, arcs=None) -> int:
    """Internally vertex-disjoint s-t paths; ``s`` and ``t`` must be non-adjacent."""
    arcs = _split_arcs(g) if arcs is None else arcs
    return max_flow(arcs, (s, 1), (t, 0))


def vertex_connectivity(g: Graph) -> int:
    """Fewest vertex deletions that disconnect ``g``; ``n - 1`` for complete graphs."""
    if g.n < 2 or not g.is_connected():
        return 0
    if all(len(nb) == g.n - 1 for nb in g.neighbors):
        return g.n - 1
    arcs = _split_arcs(g)
    best = g.n - 1
    # A minimum separator S either misses vertex 0, or contains it and at most
    # |S| - 1 of its neighbours, so one of the first `best` neighbours is outside S.
    sources = (0, *g.neighbors[0])
    for i, s in enumerate(sources):
        if i > best:
            break
        adj = set(g.neighbors[s])
        for t in range(g.n):
            if t != s and t not in adj:
                best = min(best, local_vertex_connectivity(g, s, t, arcs))
    return best


def edge_connectivity(g: Graph) -> int:
    if g.n < 2 or not g.is_connected():
        return 0
    arcs = _edge_arcs(g)
    return min(max_flow(arcs, 0, t) for t in range(1, g.n))


def _second_smallest(M: np.ndarray) -> float:
    evals = np.linalg.eigvalsh(M)
    return float(evals[1]) if len(evals) > 1 else 0.0


def algebraic_connectivity(g: Graph) -> float:
    """Second-smallest Laplacian eigenvalue; 0 for disconnected graphs."""
    if not g.is_connected():
        log.warning("algebraic connectivity of a disconnected graph reported as 0")
        return 0.0
    return max(0.0, _second_smallest(g.laplacian()))


def normalized_algebraic_connectivity(g: Graph) -> float:
    if not g.is_connected():
        log.warning("normalized algebraic connectivity of a disconnected graph reported as 0")
        return 0.0
    return max(0.0, _second_smallest(matrices(g)[3]))


@dataclass(frozen=True)
class ConnectivityReport:
    graph: str
    n: int
    degree_min: int
    degree_max: int
    vertex_connectivity: int
    edge_connectivity: int
    algebraic_connectivity: float
    normalized_algebraic_connectivity: float
    connected: bool = True

    def to_dict(self) -> dict:
        return asdict(self)


def connectivity_report(g: Graph) -> ConnectivityReport:
    return ConnectivityReport(
        graph=str(g.family) if g.family else "custom",
        n=g.n,
        degree_min=int(g.degrees.min()),
        degree_max=int(g.degrees.max()),
        vertex_connectivity=vertex_connectivity(g),
        edge_connectivity=edge_connectivity(g),
        algebraic_connectivity=algebraic_connectivity(g),
        normalized_algebraic_connectivity=normalized_algebraic_connectivity(g),
        connected=g.is_connected(),
    )
