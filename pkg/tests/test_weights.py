import numpy as np
import pytest
from hypothesis import given, settings

from conftest import stable_arma_strategy
from lincov.errors import DomainError, NonInvertibleError, NonStationaryError
from lincov.models import ArmaModel, check_invertible
from lincov.weights import (
    FilterWeights,
    arma_pi_weights,
    arma_psi_weights,
    fractional_integration_weights,
    long_division_oracle,
)


def test_psi_ar1_geometric():
    w = arma_psi_weights(ArmaModel(ar=(0.5,)), 200)
    np.testing.assert_allclose(w.coeffs, 0.5 ** np.arange(201), rtol=1e-12)


def test_psi_pure_ma_is_finite():
    w = arma_psi_weights(ArmaModel(ma=(0.4, -0.3)), 10)
    np.testing.assert_array_equal(w.coeffs, [1.0, 0.4, -0.3] + [0.0] * 8)
    assert w.tail_ratio == 0.0
    assert w.tail_start == 3


def test_psi_arma11():
    w = arma_psi_weights(ArmaModel(ar=(0.5,), ma=(0.4,)), 50)
    expected = np.concatenate([[1.0], 0.9 * 0.5 ** np.arange(50)])
    np.testing.assert_allclose(w.coeffs, expected, rtol=1e-12)


def test_pi_ma1_geometric():
    w = arma_pi_weights(ArmaModel(ma=(0.4,)), 200)
    np.testing.assert_allclose(w.coeffs, (-0.4) ** np.arange(201), rtol=1e-12)


def test_pi_pure_ar_is_finite():
    w = arma_pi_weights(ArmaModel(ar=(0.5, -0.2)), 10)
    np.testing.assert_array_equal(w.coeffs, [1.0, -0.5, 0.2] + [0.0] * 8)


def test_pi_arma11():
    w = arma_pi_weights(ArmaModel(ar=(0.5,), ma=(0.4,)), 50)
    expected = np.concatenate([[1.0], -0.9 * (-0.4) ** np.arange(50)])
    np.testing.assert_allclose(w.coeffs, expected, rtol=1e-12)


def test_long_division_geometric_series():
    np.testing.assert_array_equal(long_division_oracle([1.0], [1.0, -1.0], 3),
                                  [1.0, 1.0, 1.0, 1.0])


def test_long_division_hand_example():
    out = long_division_oracle([1.0, 0.4], [1.0, -0.5], 2)
    np.testing.assert_allclose(out, [1.0, 0.9, 0.45], rtol=1e-15)


def test_long_division_identity():
    p = [1.0, -0.7, 0.3, 0.05]
    out = long_division_oracle(p, p, 6)
    np.testing.assert_allclose(out, [1.0] + [0.0] * 6, atol=1e-15)


def test_long_division_zero_constant_term():
    with pytest.raises(DomainError):
        long_division_oracle([1.0], [0.0, 1.0], 3)


@settings(max_examples=60, deadline=None)
@given(stable_arma_strategy())
def test_recursion_matches_long_division(model):
    n = 120
    psi = arma_psi_weights(model, n).coeffs
    oracle = long_division_oracle(model.theta_poly(), model.phi_poly(), n)
    np.testing.assert_allclose(psi, oracle, rtol=0, atol=1e-12)
    pi = arma_pi_weights(model, n).coeffs
    oracle_pi = long_division_oracle(model.phi_poly(), model.theta_poly(), n)
    np.testing.assert_allclose(pi, oracle_pi, rtol=0, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(stable_arma_strategy())
def test_reconvolution_recovers_numerator(model):
    n = 100
    psi = arma_psi_weights(model, n).coeffs
    recon = np.convolve(model.phi_poly(), psi)[: n + 1]
    target = np.zeros(n + 1)
    theta = model.theta_poly()
    target[: theta.size] = theta
    np.testing.assert_allclose(recon, target, rtol=0, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(stable_arma_strategy())
def test_psi_pi_duality(model):
    n = 200
    psi = arma_psi_weights(model, n).coeffs
    pi = arma_pi_weights(model, n).coeffs
    conv = np.convolve(psi, pi)[: n + 1]
    assert abs(conv[0] - 1.0) <= 1e-10
    assert np.abs(conv[1:]).max() <= 1e-10


def test_pi_root_rate_bound():
    for model in (ArmaModel(ar=(0.5,), ma=(0.4,)),
                  ArmaModel(ar=(1.5, -0.56), ma=(0.4, 0.2))):
        rate_cap = 1.0 / check_invertible(model).min_modulus + 0.01
        w = arma_pi_weights(model, 200)
        assert w.tail_ratio <= rate_cap + 1e-12
        # |pi_n|^(1/n) settles below the root rate plus margin
        tail = np.abs(w.coeffs[150:])
        nz = np.nonzero(tail)[0]
        rates = tail[nz] ** (1.0 / (150 + nz))
        assert rates.max() <= rate_cap + 1e-9


@settings(max_examples=40, deadline=None)
@given(stable_arma_strategy())
def test_declared_envelope_holds_on_range(model):
    w = arma_psi_weights(model, 150)
    n = np.arange(w.tail_start, 151, dtype=float)
    coeffs = np.abs(w.coeffs[w.tail_start:])
    if w.tail_ratio == 0.0:
        assert np.all(coeffs[max(1 - w.tail_start, 0):] == 0.0)
    else:
        envelope = w.tail_const * (1 + 1e-9) * w.tail_ratio ** n
        assert np.all(coeffs <= envelope + 1e-300)


def test_default_truncation_rule():
    w = arma_psi_weights(ArmaModel(ar=(0.5,), ma=(0.4,)))
    n = w.n_top
    total = np.abs(w.coeffs).sum()
    assert w.tail_const * w.tail_ratio ** n < 1e-14 * total
    assert n <= 10**5


def test_default_truncation_pure_ma_keeps_support():
    w = arma_psi_weights(ArmaModel(ma=(0.4, -0.3)))
    assert w.n_top == 2
    np.testing.assert_array_equal(w.coeffs, [1.0, 0.4, -0.3])


def test_direction_errors():
    with pytest.raises(NonInvertibleError):
        arma_pi_weights(ArmaModel(ma=(2.0,)), 10)
    with pytest.raises(NonStationaryError):
        arma_psi_weights(ArmaModel(ar=(1.2,)), 10)


def test_abs_sum_includes_tail_bound():
    w = arma_psi_weights(ArmaModel(ar=(0.5,)), 30)
    assert w.abs_sum() >= np.abs(w.coeffs).sum()
    assert np.isfinite(w.abs_sum())


def test_fractional_integration_weights_recursion():
    w = fractional_integration_weights(0.3, 6)
    expected = [1.0]
    for n in range(1, 7):
        expected.append(expected[-1] * (n - 1 + 0.3) / n)
    np.testing.assert_allclose(w.coeffs, expected, rtol=1e-15)
    with pytest.raises(DomainError):
        fractional_integration_weights(0.5, 5)


def test_filter_weights_validation():
    with pytest.raises(DomainError):
        FilterWeights([1.0, 0.5], tail_ratio=1.0, tail_const=1.0)
    with pytest.raises(DomainError):
        # envelope 0.1 * 0.2^n cannot cover psi_1 = 0.5
        FilterWeights([1.0, 0.5], tail_ratio=0.2, tail_const=0.1, tail_start=1)
