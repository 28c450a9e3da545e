import os
import subprocess
import sys

import numpy as np
import pytest

from gtwidth import _kernels, oracle

needs_numba = pytest.mark.skipif(_kernels.min_slack_numba is None, reason="numba disabled")


@needs_numba
def test_min_slack_backends_agree():
    rng = np.random.default_rng(0)
    A = rng.integers(-2, 3, size=(30, 7)).astype(float)
    b = rng.integers(0, 5, size=30).astype(float)
    X = rng.normal(size=(500, 7))
    assert _kernels.min_slack_numba(A, b, X) == pytest.approx(_kernels.min_slack_numpy(A, b, X), abs=1e-12)


@needs_numba
def test_psi_deviation_backends_agree():
    pts = oracle.sample_psi_domain(3, 300, np.random.default_rng(1))
    a = _kernels.psi_deviation_numba(pts, 1e-6)
    b = _kernels.psi_deviation_numpy(pts, 1e-6)
    assert a == pytest.approx(b, rel=1e-3, abs=1e-12)


def test_min_slack_matches_direct_evaluation():
    A = np.array([[1.0, 0.0], [0.0, -1.0]])
    b = np.array([1.0, 0.0])
    X = np.array([[0.5, 0.5], [2.0, 1.0]])
    # slacks: [0.5, 0.5], [-1, 1]
    assert _kernels.min_slack(A, b, X) == -1.0
    assert _kernels.min_slack_numpy(A, b, X[:0]) == np.inf


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, GTWIDTH_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c",
         "from gtwidth import _kernels, oracle; "
         "print(_kernels.BACKEND, oracle.psi_symplectic_check(2, 50, seed=0) < 1e-7)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.split() == ["numpy", "True"]
