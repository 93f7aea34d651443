import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qwalk.dynamics import SearchSystem
from qwalk.errors import ConfigError
from qwalk.graphs import build, build_complete, build_joined_complete, build_simplex_complete
from qwalk.oracle import (
    compare,
    effective_eigenpairs,
    effective_matrix,
    gamma_c1_exact,
    lattice_scaling_table,
    numeric_gap,
    predict_complete,
    predict_joined,
    predict_simplex_stage1,
    predict_simplex_stage2,
    schedule_for,
)
from qwalk.spectral import hermitian_eig


def test_predict_complete():
    p = predict_complete(1024)
    assert p.runtime == pytest.approx(16 * math.pi)
    assert p.runtime == pytest.approx(50.27, abs=0.01)
    assert predict_complete(4).energy_gap == 1.0
    assert p.gamma_c == 1 / 1024 and p.peak_probability == 1.0
    with pytest.raises(ConfigError):
        predict_complete(1)


def test_predict_complete_numeric_gap():
    N = 1024
    system = SearchSystem(build_complete(N), 0)
    p = predict_complete(N)
    assert abs(numeric_gap(system, p.gamma_c, p.levels) - p.energy_gap) <= 10 / N


def test_predict_joined():
    p = predict_joined(1024)
    assert p.runtime == pytest.approx(math.pi / 2 * math.sqrt(512))
    assert p.runtime == pytest.approx(35.54, abs=0.01)
    assert p.peak_probability == 0.5
    assert predict_joined(8).gamma_c == 0.25
    with pytest.raises(ConfigError):
        predict_joined(7)


def test_predict_joined_numeric_gap():
    N = 1024
    p = predict_joined(N)
    system = SearchSystem(build_joined_complete(N), 0)
    assert abs(numeric_gap(system, p.gamma_c, p.levels) - p.energy_gap) <= 20 / N


def test_predict_simplex_stage1():
    p = predict_simplex_stage1(100)
    assert p.runtime == pytest.approx(785.40, abs=0.005)
    exact, approx = p.critical_gammas
    assert exact == pytest.approx((math.sqrt(10800) - 100) / 200, rel=1e-14)
    assert exact == pytest.approx(0.019615, abs=1e-6)
    assert approx == 0.02
    assert gamma_c1_exact(4) == pytest.approx((-4 + 2 * math.sqrt(12)) / 8, rel=1e-14)
    assert gamma_c1_exact(4) == pytest.approx(0.3660, abs=1e-4)


def test_predict_simplex_stage2():
    p = predict_simplex_stage2(100)
    assert p.runtime == pytest.approx(5 * math.pi)
    assert p.runtime == pytest.approx(15.71, abs=0.005)
    assert predict_simplex_stage2(4).energy_gap == 1.0
    total = predict_simplex_stage1(100).runtime + p.runtime
    assert total == pytest.approx(801.1, abs=0.01)


@given(st.integers(6, 10**6).map(lambda n: 2 * (n // 2)), st.integers(3, 10**4))
def test_runtime_is_pi_over_gap(N, M):
    for p in (predict_complete(N), predict_joined(N), predict_simplex_stage1(M), predict_simplex_stage2(M)):
        assert p.runtime == math.pi / p.energy_gap
        assert p.energy_gap > 0 and p.runtime > 0 and 0 < p.peak_probability <= 1


def test_effective_matrix_values():
    N = 50
    x = math.sqrt(2 / N)
    assert np.array_equal(effective_matrix("joined", N), [[-1, -x, 0], [-x, -1, 0], [0, 0, -1]])
    H = effective_matrix("simplex_stage2", 16)
    assert np.array_equal(H[:2, :2], [[-1, -0.25], [-0.25, -1]])
    assert np.array_equal(H[2:, 2:], -np.eye(2))
    assert np.all(H[:2, 2:] == 0)
    assert np.allclose(np.linalg.eigvalsh(effective_matrix("joined", 2)), [-2, -1, 0])
    with pytest.raises(ConfigError):
        effective_matrix("hypercube", 4)


@pytest.mark.parametrize("case,size", [("joined", 64), ("joined", 1024), ("simplex_stage2", 16), ("simplex_stage2", 100)])
def test_effective_eigenpairs(case, size):
    H = effective_matrix(case, size)
    vals, vecs = effective_eigenpairs(case, size)
    dec = hermitian_eig(H)
    assert np.allclose(dec.eigenvalues, vals, atol=1e-14)
    for k in range(len(vals)):
        same = np.isclose(vals, vals[k], atol=1e-12)
        # degenerate levels are compared as subspaces
        P_num = dec.eigenvectors[:, same] @ dec.eigenvectors[:, same].conj().T
        v = vecs[:, k]
        assert abs(v @ P_num @ v) >= 1 - 1e-10


def test_schedule_for():
    s = schedule_for("simplex_complete:M=100")
    (g1, t1), (g2, t2) = s.stages
    assert (g1, g2) == (0.02, 0.01)
    assert t1 == pytest.approx(785.40, abs=0.005) and t2 == pytest.approx(15.71, abs=0.005)
    assert schedule_for("simplex_complete:M=100", exact_gamma=True).stages[0][0] == pytest.approx(0.019615, abs=1e-6)
    (g, t), = schedule_for(build_complete(1024)).stages
    assert g == 1 / 1024 and t == pytest.approx(16 * math.pi)
    (g, t), = schedule_for("joined_complete:N=1024").stages
    assert g == 2 / 1024 and t == pytest.approx(35.54, abs=0.005)
    with pytest.raises(ConfigError):
        schedule_for("hypercube:d=3")


def test_lattice_scaling_table():
    assert lattice_scaling_table(3) == {
        "single_runtime": "N^(2/3)", "success_probability": "1/N^(1/3)", "total_runtime": "N"
    }
    assert tuple(lattice_scaling_table(7).values()) == ("N^(1/2)", "1", "N^(1/2)")
    assert tuple(lattice_scaling_table(5).values()) == ("N^(1/2)", "1", "N^(1/2)")
    assert tuple(lattice_scaling_table(2).values()) == ("N/log N", "(log^2 N)/N", "N^2/log^3 N")
    assert lattice_scaling_table(4)["success_probability"] == "1/log N"
    with pytest.raises(ConfigError):
        lattice_scaling_table(1)


@pytest.mark.parametrize("N", [64, 256, 1024])
def test_joined_gap_relative_error(N):
    p = predict_joined(N)
    gap = numeric_gap(SearchSystem(build_joined_complete(N), 0), p.gamma_c, p.levels)
    assert abs(gap - p.energy_gap) / p.energy_gap <= 8 / math.sqrt(N)


@pytest.mark.parametrize("M", [16, 36, 64, 100])
def test_simplex_gap_relative_errors(M):
    system = SearchSystem(build_simplex_complete(M), 0)
    for p in (predict_simplex_stage1(M), predict_simplex_stage2(M)):
        gap = numeric_gap(system, p.gamma_c, p.levels)
        assert abs(gap - p.energy_gap) / p.energy_gap <= 8 / math.sqrt(M)


def test_compare_joined():
    out = compare(build_joined_complete(1024))
    (stage,) = out["stages"]
    assert stage["gap"]["rel_error"] < 0.25
    assert stage["runtime"]["rel_error"] < 0.05
    assert stage["peak_probability"]["numeric"] == pytest.approx(0.5, abs=0.05)


def test_compare_simplex_two_stages():
    out = compare(build_simplex_complete(36))
    assert [s["stage"] for s in out["stages"]] == ["simplex_stage1", "simplex_stage2"]
    for s in out["stages"]:
        assert s["gap"]["rel_error"] <= 8 / 6


def test_compare_rejects_unsupported():
    with pytest.raises(ConfigError):
        compare(build("hypercube:d=3"))
