"""Search Hamiltonians, piecewise-constant evolution and overlap sweeps."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, ContractViolation
from .graphs import Graph
from .spectral import (
    MODES,
    Partition,
    ReducedSystem,
    SpectralDecomposition,
    equitable_partition,
    hermitian_eig,
    reduce,
)
from .threads import max_workers

NORM_TOL = 1e-10


@dataclass(frozen=True)
class SearchConfig:
    graph: Graph
    marked: int = 0
    gamma: float = 1.0
    mode: str = "adjacency"

    def __post_init__(self):
        if not 0 <= self.marked < self.graph.n:
            raise ConfigError(f"marked vertex {self.marked} out of range for n={self.graph.n}")
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise ConfigError(f"gamma must be finite and positive, got {self.gamma}")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")


@dataclass(frozen=True)
class Schedule:
    """Ordered ``(gamma, duration)`` stages."""

    stages: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.stages:
            raise ConfigError("schedule needs at least one stage")
        stages = tuple((float(g), float(t)) for g, t in self.stages)
        for g, t in stages:
            if not (math.isfinite(g) and g > 0):
                raise ConfigError(f"stage gamma must be positive, got {g}")
            if not (math.isfinite(t) and t > 0):
                raise ConfigError(f"stage duration must be positive, got {t}")
        object.__setattr__(self, "stages", stages)

    @property
    def total_time(self) -> float:
        return sum(t for _, t in self.stages)

    @property
    def boundaries(self) -> list[float]:
        return list(np.cumsum([t for _, t in self.stages]))

    @classmethod
    def parse(cls, text: str) -> Schedule:
        """Parse ``"g1:t1,g2:t2"``."""
        stages = []
        for item in text.split(","):
            g, sep, t = item.partition(":")
            if not sep:
                raise ConfigError(f"bad stage {item!r}: expected gamma:duration")
            try:
                stages.append((float(g), float(t)))
            except ValueError:
                raise ConfigError(f"bad stage {item!r}: expected numbers") from None
        return cls(tuple(stages))


@dataclass(frozen=True)
class TimeSeries:
    times: np.ndarray
    labels: tuple[str, ...]
    probabilities: np.ndarray
    norms: np.ndarray
    stage_ends: tuple[float, ...] = field(default=())

    def column(self, label: str) -> np.ndarray:
        try:
            return self.probabilities[:, self.labels.index(label)]
        except ValueError:
            raise ConfigError(f"observable {label!r} not recorded; have {list(self.labels)}") from None

    def value_at(self, label: str, t: float) -> float:
        """Sample nearest to ``t``."""
        i = int(np.argmin(np.abs(self.times - t)))
        return float(self.column(label)[i])


def uniform_state(n: int) -> np.ndarray:
    if n < 1:
        raise ConfigError("uniform state needs n >= 1")
    return np.full(n, 1.0 / np.sqrt(n), dtype=complex)


def search_hamiltonian(cfg: SearchConfig) -> np.ndarray:
    """``gamma*L - |a><a|`` (laplacian) or ``-gamma*A - |a><a|`` (adjacency)."""
    if cfg.mode == "laplacian":
        H = cfg.gamma * cfg.graph.laplacian()
    else:
        H = -cfg.gamma * cfg.graph.adjacency()
    H[cfg.marked, cfg.marked] -= 1.0
    return H


def _decomposition(H) -> SpectralDecomposition:
    return H if isinstance(H, SpectralDecomposition) else hermitian_eig(H)


def _check_norm(psi: np.ndarray) -> None:
    if abs(np.linalg.norm(psi) - 1.0) > NORM_TOL:
        raise ContractViolation(f"state is not normalized (norm {np.linalg.norm(psi):.3g})")


def evolve_many(H, psi0: np.ndarray, times: np.ndarray) -> np.ndarray:
    """States at each of ``times`` as rows."""
    dec = _decomposition(H)
    psi0 = np.asarray(psi0, dtype=complex)
    _check_norm(psi0)
    V = dec.eigenvectors
    coeffs = V.conj().T @ psi0
    phases = np.exp(-1j * np.outer(np.asarray(times, dtype=float), dec.eigenvalues))
    return (phases * coeffs) @ V.T


def evolve(H, psi0: np.ndarray, t: float) -> np.ndarray:
    """``exp(-iHt) psi0``; ``H`` may be a matrix or its decomposition."""
    return evolve_many(H, psi0, np.array([t]))[0]


class SearchSystem:
    """A search problem in the full vertex space or in its reduced subspace."""

    def __init__(self, graph: Graph, marked: int = 0, mode: str = "adjacency", reduced: bool = True):
        SearchConfig(graph, marked, 1.0, mode)
        self.graph = graph
        self.marked = marked
        self.mode = mode
        self.reduced = reduced
        self.partition: Partition = equitable_partition(graph, marked)
        self._rs: ReducedSystem | None = reduce(graph, marked, 1.0, mode) if reduced else None
        self._graph_term: np.ndarray | None = None

    @classmethod
    def from_config(cls, cfg: SearchConfig, reduced: bool = True) -> SearchSystem:
        return cls(cfg.graph, cfg.marked, cfg.mode, reduced)

    @property
    def dim(self) -> int:
        return len(self.partition) if self.reduced else self.graph.n

    def hamiltonian(self, gamma: float) -> np.ndarray:
        if self._rs is not None:
            return self._rs.hamiltonian(gamma)
        if self._graph_term is None:
            cfg = SearchConfig(self.graph, self.marked, 1.0, self.mode)
            self._graph_term = search_hamiltonian(cfg)
            self._graph_term[self.marked, self.marked] += 1.0
        H = gamma * self._graph_term
        H[self.marked, self.marked] -= 1.0
        return H

    def initial_state(self) -> np.ndarray:
        return self._rs.uniform() if self._rs is not None else uniform_state(self.graph.n)

    def probe(self, name: str) -> np.ndarray:
        """``"s"`` for the equal superposition, else a cell label."""
        if name == "s":
            return self.initial_state()
        i = self.partition.index(name)
        out = np.zeros(self.dim, dtype=complex)
        if self._rs is not None:
            out[i] = 1.0
        else:
            cell = list(self.partition.cells[i])
            out[cell] = 1.0 / np.sqrt(len(cell))
        return out

    def cell_probabilities(self, states: np.ndarray, labels: list[str]) -> np.ndarray:
        states = np.atleast_2d(states)
        idx = [self.partition.index(lb) for lb in labels]
        if self._rs is not None:
            return np.abs(states[:, idx]) ** 2
        dens = np.abs(states) ** 2
        return np.stack(
            [dens[:, list(self.partition.cells[i])].sum(axis=1) for i in idx], axis=1
        )


def _sample_times(t0: float, duration: float, dt: float, include_start: bool) -> np.ndarray:
    """Offsets from ``t0`` of the global ``dt`` grid inside the stage, plus its end."""
    end = t0 + duration
    eps = 1e-12 * max(1.0, end)
    first = math.ceil((t0 - eps) / dt)
    last = math.floor((end - eps) / dt)
    grid = np.arange(first, last + 1) * dt
    grid = grid[(grid > t0 + eps) & (grid < end - eps)]
    taus = np.concatenate([[0.0] if include_start else [], grid - t0, [duration]])
    return taus


def run_schedule(
    cfg_base: SearchConfig | SearchSystem,
    schedule: Schedule,
    dt: float | None = None,
    observables: list[str] = ("a",),
    reduced: bool = True,
    psi0: np.ndarray | None = None,
) -> TimeSeries:
    """Evolve under each stage in turn, sampling every ``dt`` and at stage ends.

    ``dt`` defaults to the first stage duration / 2000.
    """
    system = cfg_base if isinstance(cfg_base, SearchSystem) else SearchSystem.from_config(cfg_base, reduced)
    if dt is None:
        dt = schedule.stages[0][1] / 2000
    if not dt > 0:
        raise ConfigError(f"dt must be positive, got {dt}")
    observables = list(observables)
    psi = system.initial_state() if psi0 is None else np.asarray(psi0, dtype=complex)

    times, probs, norms = [], [], []
    t0 = 0.0
    for k, (gamma, duration) in enumerate(schedule.stages):
        dec = hermitian_eig(system.hamiltonian(gamma))
        taus = _sample_times(t0, duration, dt, include_start=(k == 0))
        states = evolve_many(dec, psi, taus)
        times.append(t0 + taus)
        probs.append(system.cell_probabilities(states, observables))
        norms.append(np.linalg.norm(states, axis=1))
        psi = states[-1]
        t0 += duration

    norms_all = np.concatenate(norms)
    if np.max(np.abs(norms_all - 1.0)) > 1e-9:
        raise ContractViolation("norm drifted by more than 1e-9 during evolution")
    return TimeSeries(
        np.concatenate(times),
        tuple(observables),
        np.concatenate(probs),
        norms_all,
        tuple(schedule.boundaries),
    )


def find_peak(ts: TimeSeries, observable: str) -> tuple[float, float]:
    """Global maximum with parabolic refinement over its neighbours.

    Ties resolve to the earliest sample.
    """
    p = ts.column(observable)
    if len(p) == 0:
        raise ConfigError("empty time series")
    i = int(np.argmax(p))
    if i == 0 or i == len(p) - 1:
        return float(ts.times[i]), float(p[i])
    t3 = ts.times[i - 1 : i + 2]
    p3 = p[i - 1 : i + 2]
    a, b, c = np.polyfit(t3 - t3[1], p3, 2)
    if a >= 0:
        return float(ts.times[i]), float(p[i])
    shift = -b / (2 * a)
    shift = min(max(shift, t3[0] - t3[1]), t3[2] - t3[1])
    return float(t3[1] + shift), float(a * shift**2 + b * shift + c)


@dataclass(frozen=True)
class OverlapTable:
    gammas: np.ndarray
    eigenvalues: np.ndarray
    overlaps: dict[str, np.ndarray]

    def rows(self):
        """``(gamma, k, E_k, overlap per probe...)`` in probe order."""
        names = list(self.overlaps)
        for gi, g in enumerate(self.gammas):
            for k, e in enumerate(self.eigenvalues[gi]):
                yield (float(g), k, float(e), *(float(self.overlaps[n][gi, k]) for n in names))


def overlap_spectrum(
    cfg_base: SearchConfig | SearchSystem,
    gammas,
    probes=("s", "a"),
    reduced: bool = True,
) -> OverlapTable:
    """Eigenvalues and ``|<probe|psi_k>|^2`` at each gamma.

    ``probes`` holds probe names (``"s"`` or a cell label) or state vectors;
    vectors are keyed ``p0, p1, ...``.
    """
    system = cfg_base if isinstance(cfg_base, SearchSystem) else SearchSystem.from_config(cfg_base, reduced)
    gammas = np.asarray(list(gammas), dtype=float)
    named: dict[str, np.ndarray] = {}
    for i, p in enumerate(probes):
        vec = system.probe(p) if isinstance(p, str) else np.asarray(p, dtype=complex)
        if abs(np.linalg.norm(vec) - 1.0) > NORM_TOL:
            raise ContractViolation(f"probe {i} is not normalized")
        named[p if isinstance(p, str) else f"p{i}"] = vec

    def one(gamma):
        dec = hermitian_eig(system.hamiltonian(gamma))
        amps = {n: np.abs(dec.eigenvectors.conj().T @ v) ** 2 for n, v in named.items()}
        return dec.eigenvalues, amps

    with ThreadPoolExecutor(max_workers()) as pool:
        results = list(pool.map(one, gammas))
    evals = np.array([r[0] for r in results])
    overlaps = {n: np.array([r[1][n] for r in results]) for n in named}
    return OverlapTable(gammas, evals, overlaps)
