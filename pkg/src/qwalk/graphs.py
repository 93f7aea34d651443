"""Graph families used in the search experiments.

Vertex indexing is fixed per family so marked-vertex choices and golden
files stay stable:

* complete: ``0..n-1``.
* paley: residues ``0..q-1``.
* rook / latin_square: cell ``(r, c)`` is vertex ``r*m + c``.
* hypercube: the integer whose bits are the coordinates.
* cubic: mixed-radix index, coordinate 0 least significant.
* joined_complete: left clique ``0..N/2-1``, right clique ``N/2..N-1``;
  the bridge joins ``N/2-1`` and ``N/2``.
* simplex_complete: vertex ``v`` of clique ``i`` is ``i*M + v``.
"""

from __future__ import annotations

import json
import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path

import numpy as np

from .errors import ConfigError

FAMILY_PARAMS: dict[str, tuple[str, ...]] = {
    "complete": ("n",),
    "paley": ("q",),
    "rook": ("m",),
    "latin_square": ("m",),
    "hypercube": ("d",),
    "cubic": ("d", "side"),
    "joined_complete": ("N",),
    "simplex_complete": ("M",),
}


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: dict[str, int] = field(default_factory=dict)

    def __str__(self) -> str:
        if not self.params:
            return self.name
        args = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.name}:{args}"

    def to_dict(self) -> dict:
        return {"name": self.name, **self.params}

    @classmethod
    def from_dict(cls, data: dict) -> FamilySpec:
        data = dict(data)
        name = data.pop("name")
        return cls(name, {k: int(v) for k, v in data.items()})


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    n: int
    edges: tuple[tuple[int, int], ...]
    family: FamilySpec | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError("graph needs at least one vertex")
        seen = set()
        canon = []
        for i, j in self.edges:
            i, j = int(i), int(j)
            if i == j:
                raise ConfigError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ConfigError(f"edge ({i}, {j}) out of range for n={self.n}")
            e = (i, j) if i < j else (j, i)
            if e in seen:
                raise ConfigError(f"duplicate edge {e}")
            seen.add(e)
            canon.append(e)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            nbrs[i].append(j)
            nbrs[j].append(i)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.array([len(x) for x in self.neighbors], dtype=int)
        deg.flags.writeable = False
        return deg

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def is_regular(self) -> bool:
        return bool(np.all(self.degrees == self.degrees[0]))

    def is_connected(self) -> bool:
        seen = np.zeros(self.n, dtype=bool)
        seen[0] = True
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in self.neighbors[u]:
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
        return bool(seen.all())

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        if self.edges:
            idx = np.array(self.edges)
            A[idx[:, 0], idx[:, 1]] = 1.0
            A[idx[:, 1], idx[:, 0]] = 1.0
        return A

    def laplacian(self) -> np.ndarray:
        return np.diag(self.degrees.astype(float)) - self.adjacency()


def matrices(g: Graph) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(A, D, L, Lnorm)`` with ``Lnorm[i, j] = L[i, j] / sqrt(deg i * deg j)``."""
    A = g.adjacency()
    deg = g.degrees.astype(float)
    if np.any(deg == 0):
        raise ConfigError("normalized Laplacian undefined: graph has an isolated vertex")
    D = np.diag(deg)
    L = D - A
    scale = 1.0 / np.sqrt(deg)
    Lnorm = L * scale[:, None] * scale[None, :]
    return A, D, L, Lnorm


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ConfigError(msg)


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, math.isqrt(q) + 1))


def build_complete(n: int) -> Graph:
    _require(n >= 1, f"complete graph needs n >= 1, got {n}")
    return Graph(n, tuple(combinations(range(n), 2)), FamilySpec("complete", {"n": n}))


def build_paley(q: int) -> Graph:
    _require(_is_prime(q) and q % 4 == 1, f"paley needs a prime q = 1 mod 4, got {q}")
    residues = {(x * x) % q for x in range(1, q)}
    edges = [(i, j) for i, j in combinations(range(q), 2) if (j - i) % q in residues]
    return Graph(q, tuple(edges), FamilySpec("paley", {"q": q}))


def build_rook(m: int) -> Graph:
    _require(m >= 2, f"rook graph needs m >= 2, got {m}")
    cells = [(r, c) for r in range(m) for c in range(m)]
    edges = [
        (r1 * m + c1, r2 * m + c2)
        for (r1, c1), (r2, c2) in combinations(cells, 2)
        if r1 == r2 or c1 == c2
    ]
    return Graph(m * m, tuple(edges), FamilySpec("rook", {"m": m}))


def build_latin_square(m: int) -> Graph:
    """Latin-square graph of the cyclic square ``L[r][c] = (r + c) mod m``."""
    _require(m >= 3, f"latin_square graph needs m >= 3, got {m}")
    cells = [(r, c) for r in range(m) for c in range(m)]
    edges = [
        (r1 * m + c1, r2 * m + c2)
        for (r1, c1), (r2, c2) in combinations(cells, 2)
        if r1 == r2 or c1 == c2 or (r1 + c1) % m == (r2 + c2) % m
    ]
    return Graph(m * m, tuple(edges), FamilySpec("latin_square", {"m": m}))


def build_hypercube(d: int) -> Graph:
    _require(d >= 1, f"hypercube needs d >= 1, got {d}")
    n = 1 << d
    edges = [(v, v | (1 << b)) for v in range(n) for b in range(d) if not v & (1 << b)]
    return Graph(n, tuple(edges), FamilySpec("hypercube", {"d": d}))


def build_cubic_lattice(d: int, side: int) -> Graph:
    """Periodic ``side**d`` torus with nearest-neighbour edges."""
    _require(d >= 1, f"cubic lattice needs d >= 1, got {d}")
    _require(side >= 3, f"cubic lattice needs side >= 3, got {side}")
    n = side**d
    edges = []
    for v in range(n):
        stride = 1
        for _ in range(d):
            coord = (v // stride) % side
            w = v + stride if coord < side - 1 else v - (side - 1) * stride
            edges.append((v, w))
            stride *= side
    return Graph(n, tuple(edges), FamilySpec("cubic", {"d": d, "side": side}))


def build_joined_complete(N: int) -> Graph:
    _require(N >= 6 and N % 2 == 0, f"joined_complete needs even N >= 6, got {N}")
    h = N // 2
    edges = list(combinations(range(h), 2))
    edges += [(h + i, h + j) for i, j in combinations(range(h), 2)]
    edges.append((h - 1, h))
    return Graph(N, tuple(edges), FamilySpec("joined_complete", {"N": N}))


def simplex_partner(M: int, clique: int, pos: int) -> tuple[int, int]:
    """Clique and position reached by the inter-clique edge at ``(clique, pos)``."""
    others = [j for j in range(M + 1) if j != clique]
    target = others[pos]
    back = [j for j in range(M + 1) if j != target].index(clique)
    return target, back


def build_simplex_complete(M: int) -> Graph:
    _require(M >= 3, f"simplex_complete needs M >= 3, got {M}")
    edges = []
    for i in range(M + 1):
        base = i * M
        edges += [(base + u, base + v) for u, v in combinations(range(M), 2)]
        for pos in range(M):
            j, back = simplex_partner(M, i, pos)
            if j > i:
                edges.append((base + pos, j * M + back))
    return Graph(M * (M + 1), tuple(edges), FamilySpec("simplex_complete", {"M": M}))


BUILDERS = {
    "complete": build_complete,
    "paley": build_paley,
    "rook": build_rook,
    "latin_square": build_latin_square,
    "hypercube": build_hypercube,
    "cubic": build_cubic_lattice,
    "joined_complete": build_joined_complete,
    "simplex_complete": build_simplex_complete,
}

_SPEC_RE = re.compile(r"^([a-z_]+)(?::(.*))?$")


def parse_graph_spec(s: str) -> FamilySpec:
    """Parse ``family:key=val[,key=val]`` into a validated :class:`FamilySpec`."""
    m = _SPEC_RE.match(s.strip())
    if not m:
        raise ConfigError(f"bad graph spec {s!r} at position 0: expected family:key=val")
    name, rest = m.group(1), m.group(2) or ""
    if name not in FAMILY_PARAMS:
        raise ConfigError(f"unknown family {name!r} in graph spec {s!r}")
    params: dict[str, int] = {}
    offset = len(name) + 1
    for item in rest.split(",") if rest else []:
        key, sep, val = item.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigError(f"bad graph spec {s!r} at position {offset}: expected key=val")
        if key not in FAMILY_PARAMS[name]:
            raise ConfigError(
                f"unexpected key {key!r} at position {offset} for {name}; "
                f"expected {', '.join(FAMILY_PARAMS[name])}"
            )
        if key in params:
            raise ConfigError(f"duplicate key {key!r} at position {offset}")
        try:
            params[key] = int(val.strip())
        except ValueError:
            raise ConfigError(
                f"non-integer value {val!r} for {key!r} at position {offset + len(key) + 1}"
            ) from None
        offset += len(item) + 1
    missing = [k for k in FAMILY_PARAMS[name] if k not in params]
    if missing:
        raise ConfigError(f"graph spec {s!r} is missing {', '.join(missing)}")
    ordered = {k: params[k] for k in FAMILY_PARAMS[name]}
    return FamilySpec(name, ordered)


def build(spec: FamilySpec | str) -> Graph:
    if isinstance(spec, str):
        spec = parse_graph_spec(spec)
    if spec.name not in BUILDERS:
        raise ConfigError(f"unknown family {spec.name!r}")
    return BUILDERS[spec.name](**spec.params)


def load_graph(ref: str) -> Graph:
    """Build from a family spec, or load ``@path`` (JSON or edge-list text)."""
    if not ref.startswith("@"):
        return build(ref)
    path = Path(ref[1:])
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read graph file {path}: {exc}") from None
    if path.suffix == ".json":
        return graph_from_json(text)
    return graph_from_edgelist(text)


def graph_to_dict(g: Graph) -> dict:
    return {
        "n": g.n,
        "edges": [list(e) for e in g.edges],
        "family": g.family.to_dict() if g.family else None,
    }


def graph_to_json(g: Graph) -> str:
    return json.dumps(graph_to_dict(g))


def graph_from_json(text: str) -> Graph:
    try:
        data = json.loads(text)
        fam = data.get("family")
        return Graph(
            int(data["n"]),
            tuple((int(i), int(j)) for i, j in data["edges"]),
            FamilySpec.from_dict(fam) if fam else None,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed graph JSON: {exc}") from None


def graph_to_edgelist(g: Graph) -> str:
    return "".join(f"{i} {j}\n" for i, j in g.edges)


def graph_from_edgelist(text: str, n: int | None = None) -> Graph:
    """Parse ``i j`` lines; ``n`` defaults to one past the largest index."""
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ConfigError(f"edge list line {lineno}: expected two integers")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ConfigError(f"edge list line {lineno}: expected two integers") from None
    if n is None:
        n = 1 + max((max(e) for e in edges), default=0)
    return Graph(n, tuple(edges))
