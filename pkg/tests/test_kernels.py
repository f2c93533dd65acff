"""Backend equivalence: compiled kernels must match the pure-Python
reference bit for bit."""

import os
import subprocess
import sys

import numpy as np
import pytest

from lincov import _kernels_py, backend

try:
    from lincov import _kernels
except ImportError:
    _kernels = None

needs_compiled = pytest.mark.skipif(_kernels is None,
                                    reason="compiled kernels not built")


def test_backend_name_valid():
    assert backend.backend_name() in ("compiled", "python")


@needs_compiled
@pytest.mark.parametrize("seed,count", [(42, 4), (0, 1), (7, 1001), (2**63, 4096)])
def test_normals_bit_identical(seed, count):
    a = _kernels.standard_normals(seed, count)
    b = _kernels_py.standard_normals(seed, count)
    assert np.array_equal(a, b)


@needs_compiled
@pytest.mark.parametrize("seed,count", [(1, 17), (99, 2048)])
def test_uniforms_bit_identical(seed, count):
    a = _kernels.symmetric_uniforms(seed, count)
    b = _kernels_py.symmetric_uniforms(seed, count)
    assert np.array_equal(a, b)


@needs_compiled
def test_direct_filter_bit_identical():
    rng = np.random.default_rng(0)
    taps = rng.normal(size=37)
    x = rng.normal(size=5000)
    assert np.array_equal(_kernels.direct_filter(taps, x),
                          _kernels_py.direct_filter(taps, x))


@needs_compiled
def test_recursion_bit_identical():
    phi = np.array([0.5, -0.2, 0.05])
    theta = np.array([0.4, 0.1])
    assert np.array_equal(_kernels.arma_psi_recursion(phi, theta, 500),
                          _kernels_py.arma_psi_recursion(phi, theta, 500))


def test_uniforms_in_half_open_interval():
    u = backend.symmetric_uniforms(5, 10000)
    assert np.all(u >= -1.0) and np.all(u < 1.0)


def test_normals_basic_moments():
    z = backend.standard_normals(2024, 200000)
    assert abs(z.mean()) < 0.01
    assert abs(z.var() - 1.0) < 0.02
    assert np.all(np.isfinite(z))


def test_direct_filter_matches_numpy_convolve():
    rng = np.random.default_rng(8)
    taps = rng.normal(size=12)
    x = rng.normal(size=400)
    ours = backend.direct_filter(taps, x)
    ref = np.convolve(x, taps, mode="valid")
    np.testing.assert_allclose(ours, ref, rtol=0, atol=1e-12)


def test_direct_filter_rejects_short_series():
    with pytest.raises(ValueError):
        backend.direct_filter(np.ones(5), np.ones(3))


def test_env_forces_python_backend():
    code = "import lincov.backend as b; print(b.backend_name())"
    env = dict(os.environ, LINCOV_BACKEND="python")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_recursion_seed_values():
    psi = backend.arma_psi_recursion(np.array([0.5]), np.array([0.4]), 3)
    np.testing.assert_allclose(psi, [1.0, 0.9, 0.45, 0.225], rtol=1e-15)
