import math

import numpy as np
import pytest

from lincov.errors import ConfigError, RangeError
from lincov.models import ArmaModel, arma_acvf
from lincov.simulation import (
    NoiseSpec,
    SimConfig,
    apply_filter,
    empirical_acvf,
    oracle_compare,
    simulate_linear_process,
    simulate_model,
)
from lincov.weights import FilterWeights, arma_pi_weights, arma_psi_weights
from lincov.zoo import MODELS

# First four standard normals for seed 42, frozen from the documented
# generator spec (SplitMix64-seeded xoshiro256++, (x >> 11) * 2^-53
# uniforms, Marsaglia polar) and recomputed independently below.
GOLDEN_NORMALS_SEED42 = (
    0.9813983900724986,
    -0.565720104673956,
    1.3403256427520227,
    0.4023128702992608,
)

_M64 = (1 << 64) - 1


def _reference_normals(seed, count):
    """From-scratch implementation of the documented stream, kept
    deliberately separate from the package kernels."""
    sm = seed & _M64
    state = []
    for _ in range(4):
        sm = (sm + 0x9E3779B97F4A7C15) & _M64
        z = sm
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
        state.append(z ^ (z >> 31))

    def rotl(x, k):
        return ((x << k) | (x >> (64 - k))) & _M64

    def next_uniform():
        s0, s1, s2, s3 = state
        out = (rotl((s0 + s3) & _M64, 23) + s0) & _M64
        t = (s1 << 17) & _M64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = rotl(s3, 45)
        state[:] = (s0, s1, s2, s3)
        return (out >> 11) * 2.0**-53

    values = []
    while len(values) < count:
        u = 2.0 * next_uniform() - 1.0
        v = 2.0 * next_uniform() - 1.0
        s = u * u + v * v
        if s >= 1.0 or s == 0.0:
            continue
        f = math.sqrt(-2.0 * math.log(s) / s)
        values.append(u * f)
        if len(values) < count:
            values.append(v * f)
    return values[:count]


def _identity_weights():
    return FilterWeights([1.0], tail_ratio=0.0, tail_const=0.0, tail_start=1)


def _config(n, seed, weights, variance=1.0, kind="gaussian"):
    return SimConfig(n_samples=n, burn_in=len(weights) - 1, seed=seed,
                     noise=NoiseSpec(kind, variance))


def _bartlett_se(emp, n):
    g = emp.values
    return math.sqrt((g[0] ** 2 + 2.0 * float(np.dot(g[1:], g[1:]))) / n)


def test_golden_normals_seed_42():
    out = simulate_linear_process(_identity_weights(),
                                  SimConfig(n_samples=4, burn_in=0, seed=42))
    assert tuple(out) == GOLDEN_NORMALS_SEED42
    assert _reference_normals(42, 4) == list(GOLDEN_NORMALS_SEED42)


def test_reference_stream_agrees_at_length():
    out = simulate_linear_process(
        _identity_weights(), SimConfig(n_samples=1000, burn_in=0, seed=123456789))
    assert list(out) == _reference_normals(123456789, 1000)


def test_identity_filter_unit_variance():
    out = simulate_linear_process(
        _identity_weights(), SimConfig(n_samples=10**6, burn_in=0, seed=42))
    assert abs(out.var() - 1.0) < 0.01
    assert abs(out.mean()) < 0.01


def test_ma1_lag_one_autocovariance():
    n = 10**6
    w = FilterWeights.from_coeffs([1.0, 0.4])
    out = simulate_linear_process(w, _config(n, 7, w))
    emp = empirical_acvf(out, 512)
    se = _bartlett_se(emp, n)
    assert abs(emp.values[1] - 0.4) < 3 * se


def test_empirical_acvf_hand_example():
    emp = empirical_acvf(np.array([1.0, -1.0, 1.0, -1.0]), 1)
    assert emp.values[0] == pytest.approx(1.0, rel=1e-15)
    assert emp.values[1] == pytest.approx(-0.75, rel=1e-15)


def test_empirical_acvf_constant_series():
    emp = empirical_acvf(np.full(100, 3.7), 10)
    assert np.all(emp.values == 0.0)


def test_empirical_acvf_cauchy_schwarz():
    rng = np.random.default_rng(5)
    emp = empirical_acvf(rng.normal(size=5000), 100)
    assert np.all(np.abs(emp.values[1:]) <= emp.values[0])


def test_empirical_acvf_fft_path_matches_direct():
    rng = np.random.default_rng(11)
    x = rng.normal(size=60000)
    d = x - x.mean()
    direct = np.array([np.dot(d[: d.size - k], d[k:]) / d.size for k in range(21)])
    emp = empirical_acvf(x, 1000)  # 6e7 op estimate: FFT path
    np.testing.assert_allclose(emp.values[:21], direct, rtol=0, atol=1e-10)


def test_determinism():
    w = arma_psi_weights(MODELS["arma11"])
    a = simulate_linear_process(w, _config(5000, 99, w))
    b = simulate_linear_process(w, _config(5000, 99, w))
    assert np.array_equal(a, b)


def test_uniform_noise_moments_and_support():
    w = _identity_weights()
    out = simulate_linear_process(
        w, SimConfig(n_samples=10**5, burn_in=0, seed=3,
                     noise=NoiseSpec("uniform", 2.0)))
    bound = math.sqrt(3 * 2.0)
    assert np.all(np.abs(out) < bound)
    assert abs(out.var() - 2.0) < 0.05


def test_burn_in_validation():
    w = arma_psi_weights(MODELS["ar1_05"], 50)
    with pytest.raises(ConfigError):
        simulate_linear_process(w, SimConfig(n_samples=10, burn_in=10, seed=1))


def test_config_validation():
    with pytest.raises(ConfigError):
        SimConfig(n_samples=0, burn_in=0, seed=1)
    with pytest.raises(ConfigError):
        NoiseSpec("poisson", 1.0)
    with pytest.raises(ConfigError):
        NoiseSpec("gaussian", 0.0)


def test_empirical_range_validation():
    with pytest.raises(RangeError):
        empirical_acvf(np.ones(10), 10)


def test_oracle_identical_sequences_pass():
    g = arma_acvf(MODELS["ar1_05"], 30)
    rep = oracle_compare(g, g, 20, 10**6)
    assert rep.passed
    assert rep.max_abs_z == 0.0


def test_oracle_detects_constructed_shift():
    g = arma_acvf(MODELS["ar1_05"], 30)
    rep0 = oracle_compare(g, g, 20, 10**6)
    shifted = g.values.copy()
    shifted[1] += 10 * max(rep0.se, 1e-12)
    from lincov.acvf import AcvfSequence
    rep = oracle_compare(AcvfSequence(shifted), g, 20, 10**6)
    assert not rep.passed
    assert abs(rep.z[1]) > 3


def test_ar1_full_pipeline():
    n = 10**6
    model = MODELS["ar1_05"]
    w = arma_psi_weights(model)
    out = simulate_linear_process(w, _config(n, 21, w, variance=model.sigma2))
    emp = empirical_acvf(out, 512)
    rep = oracle_compare(arma_acvf(model, 20), emp, 20, n)
    assert rep.passed, f"max |z| = {rep.max_abs_z}"


def test_innovation_recovery_whiteness():
    n = 2 * 10**5
    model = MODELS["arma11"]
    w_psi = arma_psi_weights(model)
    w_pi = arma_pi_weights(model)
    x = simulate_model(model, _config(n + len(w_pi) - 1, 777, w_psi,
                                      variance=model.sigma2))
    recovered = apply_filter(w_pi, x)
    assert recovered.size == n
    emp = empirical_acvf(recovered, 512)
    se = _bartlett_se(emp, n)
    assert np.all(np.abs(emp.values[1:21]) < 3 * se)


def test_apply_filter_drops_warmup():
    w = FilterWeights.from_coeffs([1.0, -1.0])
    out = apply_filter(w, np.arange(10.0))
    np.testing.assert_array_equal(out, np.ones(9))
    with pytest.raises(ConfigError):
        apply_filter(arma_psi_weights(MODELS["ar1_05"], 50), np.ones(10))


def test_long_filter_fft_path_consistent_with_direct_kernel():
    from lincov import backend
    taps = 0.998 ** np.arange(3000)  # beyond the direct-path cutoff
    w = FilterWeights.from_coeffs(taps)
    out = simulate_linear_process(w, _config(2000, 13, w))
    noise = backend.standard_normals(13, len(w) - 1 + 2000)
    direct = backend.direct_filter(np.ascontiguousarray(taps), noise)
    np.testing.assert_allclose(out, direct[:2000], rtol=0,
                               atol=1e-9 * np.abs(direct).max())
