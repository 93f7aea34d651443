"""Hermitian eigendecomposition and equitable-partition reduction."""

from __future__ import annotations

import string
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ConfigError, ContractViolation
from .graphs import Graph, simplex_partner

HERMITIAN_TOL = 1e-12

MODES = ("laplacian", "adjacency")


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T

    def __len__(self) -> int:
        return len(self.eigenvalues)


def _check_hermitian(H: np.ndarray) -> np.ndarray:
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ContractViolation(f"expected a square matrix, got shape {H.shape}")
    scale = max(1.0, float(np.max(np.abs(H)))) if H.size else 1.0
    if H.size and np.max(np.abs(H - H.conj().T)) > HERMITIAN_TOL * scale:
        raise ContractViolation("matrix is not Hermitian")
    return H


def hermitian_eig(H: np.ndarray) -> SpectralDecomposition:
    """Ascending eigenvalues and orthonormal eigenvector columns of ``H``."""
    H = _check_hermitian(H)
    evals, evecs = np.linalg.eigh(H)
    return SpectralDecomposition(evals, evecs)


def _default_labels(k: int) -> tuple[str, ...]:
    if k <= 26:
        return tuple(string.ascii_lowercase[:k])
    return tuple(f"c{i}" for i in range(k))


@dataclass(frozen=True)
class Partition:
    cells: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ConfigError(f"no cell labelled {label!r}; cells are {list(self.labels)}") from None

    def cell_of(self, n: int) -> np.ndarray:
        out = np.empty(n, dtype=int)
        for i, cell in enumerate(self.cells):
            out[list(cell)] = i
        return out

    def basis(self, n: int) -> np.ndarray:
        """Columns are normalized cell indicators."""
        P = np.zeros((n, len(self.cells)))
        for i, cell in enumerate(self.cells):
            P[list(cell), i] = 1.0 / np.sqrt(len(cell))
        return P


def cell_counts(g: Graph, partition: Partition) -> np.ndarray:
    """Neighbour-count matrix ``C[i, j]`` read off each cell's first vertex."""
    cell_of = partition.cell_of(g.n)
    k = len(partition)
    C = np.zeros((k, k), dtype=np.int64)
    for i, cell in enumerate(partition.cells):
        for u in g.neighbors[cell[0]]:
            C[i, cell_of[u]] += 1
    return C


def is_equitable(g: Graph, partition: Partition) -> bool:
    cell_of = partition.cell_of(g.n)
    k = len(partition)
    for cell in partition.cells:
        ref = None
        for v in cell:
            counts = np.bincount(cell_of[list(g.neighbors[v])], minlength=k)
            if ref is None:
                ref = counts
            elif not np.array_equal(ref, counts):
                return False
    return True


def _refine(g: Graph, marked: int) -> list[list[int]]:
    cell_of = np.ones(g.n, dtype=int)
    cell_of[marked] = 0
    k = 2 if g.n > 1 else 1
    if g.n == 1:
        cell_of[:] = 0
    while True:
        groups: list[dict[tuple, list[int]]] = [{} for _ in range(k)]
        for v in range(g.n):
            sig = tuple(np.bincount(cell_of[list(g.neighbors[v])], minlength=k))
            groups[cell_of[v]].setdefault(sig, []).append(v)
        cells = [grp[sig] for grp in groups for sig in sorted(grp)]
        if len(cells) == k:
            return cells
        k = len(cells)
        for i, cell in enumerate(cells):
            cell_of[cell] = i


def _named_cells(g: Graph, marked: int) -> list[set[int]] | None:
    fam = g.family
    if fam is None:
        return None
    if fam.name == "joined_complete":
        h = g.n // 2
        left, right = set(range(h)), set(range(h, g.n))
        near, far = (h - 1, h) if marked in left else (h, h - 1)
        if marked in (h - 1, h):
            return None
        own, other = (left, right) if marked in left else (right, left)
        return [{marked}, own - {marked, near}, {near}, {far}, other - {far}]
    if fam.name == "simplex_complete":
        M = fam.params["M"]
        i, p = divmod(marked, M)
        j, q = simplex_partner(M, i, p)
        c = j * M + q
        b = {i * M + x for x in range(M)} - {marked}
        d = {j * M + x for x in range(M)} - {c}

        def partners(vs):
            return {k * M + y for k, y in (simplex_partner(M, *divmod(v, M)) for v in vs)}

        e, f = partners(b), partners(d)
        rest = set(range(g.n)) - {marked, c} - b - d - e - f
        return [{marked}, b, {c}, d, e, f, rest]
    return None


def equitable_partition(g: Graph, marked: int) -> Partition:
    """Coarsest equitable partition refining ``{marked} | rest``.

    Cells split in order of (current cell, neighbour-count signature). For
    the joined and simplex families the cells are then put in the a, b, c...
    order of their hand-drawn colourings.
    """
    if not 0 <= marked < g.n:
        raise ConfigError(f"marked vertex {marked} out of range for n={g.n}")
    cells = _refine(g, marked)
    named = _named_cells(g, marked)
    if named is not None:
        by_set = {frozenset(c): c for c in cells}
        if len(named) == len(cells) and all(frozenset(s) in by_set for s in named):
            cells = [by_set[frozenset(s)] for s in named]
    cells_t = tuple(tuple(sorted(c)) for c in cells)
    return Partition(cells_t, _default_labels(len(cells_t)))


@dataclass(frozen=True)
class ReducedSystem:
    """Search Hamiltonian restricted to the span of cell-uniform states."""

    partition: Partition
    gamma: float
    mode: str
    adjacency: np.ndarray
    degrees: np.ndarray
    marked_cell: int = 0

    @property
    def dim(self) -> int:
        return len(self.partition)

    @cached_property
    def laplacian(self) -> np.ndarray:
        return np.diag(self.degrees) - self.adjacency

    def hamiltonian(self, gamma: float | None = None) -> np.ndarray:
        gamma = self.gamma if gamma is None else gamma
        graph_term = gamma * self.laplacian if self.mode == "laplacian" else -gamma * self.adjacency
        H = graph_term.copy()
        H[self.marked_cell, self.marked_cell] -= 1.0
        return H

    @property
    def sizes(self) -> np.ndarray:
        return np.array(self.partition.sizes, dtype=float)

    def uniform(self) -> np.ndarray:
        """Reduced coordinates of the equal superposition over all vertices."""
        return np.sqrt(self.sizes / self.sizes.sum()).astype(complex)

    def basis_state(self, label: str) -> np.ndarray:
        out = np.zeros(self.dim, dtype=complex)
        out[self.partition.index(label)] = 1.0
        return out


def reduce(g: Graph, marked: int, gamma: float, mode: str = "laplacian") -> ReducedSystem:
    """Project the exact search Hamiltonian onto the equitable-partition subspace."""
    if mode not in MODES:
        raise ConfigError(f"mode must be one of {MODES}, got {mode!r}")
    partition = equitable_partition(g, marked)
    C = cell_counts(g, partition).astype(float)
    sizes = np.array(partition.sizes, dtype=float)
    A = C * np.sqrt(sizes[:, None] / sizes[None, :])
    A = 0.5 * (A + A.T)
    degrees = C.sum(axis=1)
    return ReducedSystem(partition, float(gamma), mode, A, degrees)


def project_state(rs: ReducedSystem, full_state: np.ndarray) -> np.ndarray:
    psi = np.asarray(full_state, dtype=complex)
    return np.array(
        [psi[list(cell)].sum() / np.sqrt(len(cell)) for cell in rs.partition.cells]
    )


def lift_state(rs: ReducedSystem, reduced_state: np.ndarray) -> np.ndarray:
    r = np.asarray(reduced_state, dtype=complex)
    n = int(sum(rs.partition.sizes))
    out = np.zeros(n, dtype=complex)
    for amp, cell in zip(r, rs.partition.cells):
        out[list(cell)] = amp / np.sqrt(len(cell))
    return out


def invariant_residual(H: np.ndarray, partition: Partition) -> float:
    """``max|(1 - P P^T) H P|`` for the normalized cell-indicator basis ``P``."""
    P = partition.basis(H.shape[0])
    HP = H @ P
    return float(np.max(np.abs(HP - P @ (P.T @ HP))))
