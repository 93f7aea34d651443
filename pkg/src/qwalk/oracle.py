"""Closed-form degenerate-perturbation predictions and numeric comparisons."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .dynamics import Schedule, SearchSystem, evolve, find_peak, run_schedule
from .errors import ConfigError
from .graphs import FamilySpec, Graph, build
from .spectral import hermitian_eig


@dataclass(frozen=True)
class Prediction:
    """One two-level transfer stage.

    ``levels`` are the ascending eigenstate indices whose splitting drives
    the transfer from ``source`` to ``target``.
    """

    stage: str
    critical_gammas: tuple[float, ...]
    energy_gap: float
    runtime: float
    peak_probability: float
    eigenstate_pairing: str
    levels: tuple[int, int]
    source: str
    target: str

    @property
    def gamma_c(self) -> float:
        return self.critical_gammas[0]

    def to_dict(self) -> dict:
        return asdict(self)


def predict_complete(N: int) -> Prediction:
    if N < 2:
        raise ConfigError(f"complete-graph prediction needs N >= 2, got {N}")
    gap = 2 / math.sqrt(N)
    return Prediction(
        "complete", (1 / N,), gap, math.pi / gap, 1.0,
        "|s> ~ psi0 + psi1, |a> ~ psi0 - psi1", (0, 1), "s", "a",
    )


def predict_joined(N: int) -> Prediction:
    if N < 6 or N % 2:
        raise ConfigError(f"joined prediction needs even N >= 6, got {N}")
    gap = 2 * math.sqrt(2 / N)
    return Prediction(
        "joined", (2 / N,), gap, math.pi / gap, 0.5,
        "|a> ~ psi0 - psi2, <a|psi1> = 0, half of |s> in psi1", (0, 2), "s", "a",
    )


def gamma_c1_exact(M: int) -> float:
    return (-M + math.sqrt(M) * math.sqrt(8 + M)) / (2 * M)


def predict_simplex_stage1(M: int) -> Prediction:
    """First stage, |s> to |b>; ``critical_gammas`` is ``(exact, 2/M)``."""
    if M < 3:
        raise ConfigError(f"simplex prediction needs M >= 3, got {M}")
    gap = 4 / M**1.5
    return Prediction(
        "simplex_stage1", (gamma_c1_exact(M), 2 / M), gap, math.pi / gap, 1.0,
        "|s> ~ psi0 + psi1, |b> ~ psi0 - psi1", (0, 1), "s", "b",
    )


def predict_simplex_stage2(M: int) -> Prediction:
    if M < 3:
        raise ConfigError(f"simplex prediction needs M >= 3, got {M}")
    gap = 2 / math.sqrt(M)
    return Prediction(
        "simplex_stage2", (1 / M,), gap, math.pi / gap, 1.0,
        "|b> ~ psi0 + psi3, |a> ~ psi0 - psi3", (0, 3), "b", "a",
    )


def predictions_for(spec: FamilySpec) -> list[Prediction]:
    p = spec.params
    if spec.name == "complete":
        return [predict_complete(p["n"])]
    if spec.name == "joined_complete":
        return [predict_joined(p["N"])]
    if spec.name == "simplex_complete":
        return [predict_simplex_stage1(p["M"]), predict_simplex_stage2(p["M"])]
    raise ConfigError(f"no closed-form prediction for family {spec.name!r}")


def effective_matrix(case: str, size: int) -> np.ndarray:
    """Degenerate-block matrices: ``joined`` (basis a, b, e) or
    ``simplex_stage2`` (basis a, b, d, g)."""
    if case == "joined":
        x = math.sqrt(2 / size)
        return np.array([[-1.0, -x, 0.0], [-x, -1.0, 0.0], [0.0, 0.0, -1.0]])
    if case == "simplex_stage2":
        x = 1 / math.sqrt(size)
        H = -np.eye(4)
        H[0, 1] = H[1, 0] = -x
        return H
    raise ConfigError(f"unknown effective-matrix case {case!r}")


def effective_eigenpairs(case: str, size: int) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form eigenvalues and eigenvector columns of :func:`effective_matrix`."""
    r = 1 / math.sqrt(2)
    if case == "joined":
        x = math.sqrt(2 / size)
        vals = np.array([-1 - x, -1.0, -1 + x])
        vecs = np.array([[r, 0, -r], [r, 0, r], [0, 1, 0]])
        return vals, vecs
    if case == "simplex_stage2":
        x = 1 / math.sqrt(size)
        vals = np.array([-1 - x, -1.0, -1.0, -1 + x])
        vecs = np.array([[r, 0, 0, -r], [r, 0, 0, r], [0, 1, 0, 0], [0, 0, 1, 0]])
        return vals, vecs
    raise ConfigError(f"unknown effective-matrix case {case!r}")


def schedule_for(spec: FamilySpec | Graph | str, exact_gamma: bool = False) -> Schedule:
    """Stages at the predicted critical rates; simplex stage one uses 2/M unless ``exact_gamma``."""
    if isinstance(spec, Graph):
        spec = spec.family
    elif isinstance(spec, str):
        spec = build(spec).family
    if spec is None:
        raise ConfigError("schedule_for needs a graph family")
    preds = predictions_for(spec)
    stages = []
    for pred in preds:
        gamma = pred.critical_gammas[0]
        if pred.stage == "simplex_stage1" and not exact_gamma:
            gamma = pred.critical_gammas[1]
        stages.append((gamma, pred.runtime))
    return Schedule(tuple(stages))


LATTICE_TABLE = {
    2: ("N/log N", "(log^2 N)/N", "N^2/log^3 N"),
    3: ("N^(2/3)", "1/N^(1/3)", "N"),
    4: ("sqrt(N log N)", "1/log N", "sqrt(N) log^(3/2) N"),
    5: ("N^(1/2)", "1", "N^(1/2)"),
}


def lattice_scaling_table(d: int) -> dict[str, str]:
    """Reference scalings for search on the periodic d-dimensional lattice."""
    if d <= 1:
        raise ConfigError(f"no lattice scaling row for d={d}")
    single, prob, total = LATTICE_TABLE[min(d, 5)]
    return {"single_runtime": single, "success_probability": prob, "total_runtime": total}


def numeric_gap(system: SearchSystem, gamma: float, levels: tuple[int, int]) -> float:
    E = hermitian_eig(system.hamiltonian(gamma)).eigenvalues
    return float(E[levels[1]] - E[levels[0]])


def numeric_gamma_c(system: SearchSystem, pred: Prediction) -> float:
    """Rate minimizing the transfer gap within a factor of 1.5 of the prediction."""
    g0 = pred.gamma_c
    res = minimize_scalar(
        lambda g: numeric_gap(system, g, pred.levels),
        bounds=(g0 / 1.5, g0 * 1.5),
        method="bounded",
        options={"xatol": g0 * 1e-9},
    )
    return float(res.x)


def _rel(pred: float, num: float) -> float:
    return abs(num - pred) / abs(pred)


def compare(
    graph: Graph,
    marked: int = 0,
    mode: str = "adjacency",
    steps_per_runtime: int = 2000,
) -> dict:
    """Predicted vs numeric critical rate, gap, runtime and peak probability per stage."""
    if graph.family is None:
        raise ConfigError("compare needs a graph built from a family spec")
    preds = predictions_for(graph.family)
    system = SearchSystem(graph, marked, mode, reduced=True)
    psi = system.initial_state()
    stages = []
    for k, pred in enumerate(preds):
        gamma = pred.gamma_c
        gap = numeric_gap(system, gamma, pred.levels)
        gc = numeric_gamma_c(system, pred)
        ts = run_schedule(
            system, Schedule(((gamma, 2 * pred.runtime),)),
            dt=pred.runtime / steps_per_runtime, observables=[pred.target], psi0=psi,
        )
        t_peak, p_peak = find_peak(ts, pred.target)
        stages.append({
            "stage": pred.stage,
            "gamma_c": {"predicted": gamma, "numeric": gc, "rel_error": _rel(gamma, gc)},
            "gap": {"predicted": pred.energy_gap, "numeric": gap, "rel_error": _rel(pred.energy_gap, gap)},
            "runtime": {"predicted": pred.runtime, "numeric": t_peak, "rel_error": _rel(pred.runtime, t_peak)},
            "peak_probability": {
                "predicted": pred.peak_probability,
                "numeric": p_peak,
                "rel_error": _rel(pred.peak_probability, p_peak),
            },
        })
        if k + 1 < len(preds):
            # next stage starts where this one is predicted to end
            psi = evolve(system.hamiltonian(gamma), psi, pred.runtime)
    return {"graph": str(graph.family), "marked": marked, "mode": mode, "stages": stages}
