import numpy as np
import pytest
from hypothesis import given, settings
from scipy.integrate import quad

from conftest import stable_arma_strategy
from lincov.acvf import filter_self_acvf, toeplitz_min_eigenvalue
from lincov.errors import DomainError, NonStationaryError
from lincov.models import (
    ArmaModel,
    FarimaSpec,
    arma_acvf,
    check_invertible,
    check_stationary,
    farima_acvf,
)
from lincov.weights import arma_psi_weights
from lincov.zoo import MODELS, analytic_acvf


def test_white_noise_acvf():
    g = arma_acvf(ArmaModel.white(2.0), 6)
    assert g.values[0] == 2.0
    assert np.all(g.values[1:] == 0.0)
    assert g.tail.kind == "geometric" and g.tail.rate == 0.0


def test_ar1_acvf_matches_weight_sum_oracle():
    # oracle: gamma_k = sum_n psi_n psi_{n+k} with psi_n = 0.5^n, summed to
    # machine tolerance (0.25^120 << eps)
    psi = 0.5 ** np.arange(120)
    oracle = np.array([np.dot(psi[: 120 - k], psi[k:]) for k in range(21)])
    g = arma_acvf(ArmaModel(ar=(0.5,)), 20)
    np.testing.assert_allclose(g.values, oracle, rtol=1e-12)
    np.testing.assert_allclose(g.values, (4.0 / 3.0) * 0.5 ** np.arange(21), rtol=1e-12)


def test_ma1_acvf_finite_sum():
    g = arma_acvf(ArmaModel(ma=(0.4,)), 8)
    assert g.values[0] == pytest.approx(1.16, rel=1e-15)
    assert g.values[1] == pytest.approx(0.4, rel=1e-15)
    assert np.all(g.values[2:] == 0.0)


def test_root_report_linear_invertible():
    report = check_invertible(ArmaModel(ma=(0.5,)))
    assert report.ok
    assert report.roots[0] == pytest.approx(-2.0, rel=1e-12)
    assert report.min_modulus == pytest.approx(2.0, rel=1e-12)


def test_root_report_linear_noninvertible():
    report = check_invertible(ArmaModel(ma=(2.0,)))
    assert not report.ok
    assert report.roots[0] == pytest.approx(-0.5, rel=1e-12)


def test_root_report_factored_quadratic():
    # phi(z) = 1 - 1.5 z + 0.56 z^2 = (1 - 0.7 z)(1 - 0.8 z)
    report = check_stationary(ArmaModel(ar=(1.5, -0.56)))
    assert report.ok
    np.testing.assert_allclose(sorted(report.moduli), [1 / 0.8, 1 / 0.7], rtol=1e-10)


def test_degree_zero_is_vacuously_ok():
    model = ArmaModel.white()
    assert check_stationary(model).ok
    assert check_invertible(model).ok
    assert check_stationary(model).min_modulus == np.inf


def test_unit_root_fails_closed():
    assert not check_stationary(ArmaModel(ar=(1.0,))).ok
    with pytest.raises(NonStationaryError):
        arma_acvf(ArmaModel(ar=(1.0,)), 5)
    # modulus within the 1e-10 boundary band also fails closed
    assert not check_stationary(ArmaModel(ar=(1.0 / (1.0 + 1e-12),))).ok


@settings(max_examples=60, deadline=None)
@given(stable_arma_strategy())
def test_yule_walker_relations(model):
    k_top = model.q + 30
    g = arma_acvf(model, k_top)
    for k in range(model.q + 1, k_top + 1):
        lhs = g.values[k]
        rhs = sum(model.ar[i] * g.values[abs(k - i - 1)] for i in range(model.p))
        assert abs(lhs - rhs) <= 1e-10 * g.values[0]


@settings(max_examples=25, deadline=None)
@given(stable_arma_strategy())
def test_acvf_agrees_with_filter_route(model):
    g = arma_acvf(model, 40)
    w = arma_psi_weights(model)
    gw = filter_self_acvf(w, 40)
    np.testing.assert_allclose(model.sigma2 * gw.values, g.values,
                               rtol=0, atol=1e-9 * g.values[0])


def test_farima_d_zero_is_exactly_arma():
    arma = ArmaModel(ar=(0.5,), ma=(0.4,), sigma2=1.7)
    a = farima_acvf(FarimaSpec(0.0, arma), 50)
    b = arma_acvf(arma, 50)
    assert np.array_equal(a.values, b.values)


def test_farima_ratio_anchor():
    g = farima_acvf(FarimaSpec(0.3), 2)
    assert g.values[1] / g.values[0] == pytest.approx(3.0 / 7.0, rel=1e-14)


def _spectral_gamma(k, d, ar=(), ma=(), sigma2=1.0):
    """Independent oracle: numerical integration of the spectral density."""
    def dens(w):
        z = np.exp(1j * w)
        phi = 1 - sum(c * z ** (i + 1) for i, c in enumerate(ar))
        theta = 1 + sum(c * z ** (i + 1) for i, c in enumerate(ma))
        out = sigma2 / (2 * np.pi) * abs(theta) ** 2 / abs(phi) ** 2
        if d:
            out *= (2 * np.sin(w / 2)) ** (-2 * d)
        return out * np.cos(k * w)
    return 2 * quad(dens, 0, np.pi, limit=400)[0]


@pytest.mark.parametrize("k", [0, 1, 2, 5])
def test_farima_matches_spectral_quadrature(k):
    g = farima_acvf(FarimaSpec(0.3), 6)
    assert g.values[k] == pytest.approx(_spectral_gamma(k, 0.3), abs=1e-7)


@pytest.mark.parametrize("k", [0, 1, 3])
def test_farima_with_arma_part_matches_spectral_quadrature(k):
    spec = FarimaSpec(0.3, ArmaModel(ar=(0.5,), ma=(0.4,), sigma2=1.3))
    g = farima_acvf(spec, 4)
    oracle = _spectral_gamma(k, 0.3, ar=(0.5,), ma=(0.4,), sigma2=1.3)
    assert g.values[k] == pytest.approx(oracle, abs=1e-7)


def test_farima_negative_d():
    g = farima_acvf(FarimaSpec(-0.3), 10)
    assert g.values[0] > 0
    assert np.all(g.values[1:] < 0)  # antipersistent
    assert g.tail.kind == "power" and g.tail.rate == pytest.approx(1.6)


def test_farima_loglog_slope():
    g = farima_acvf(FarimaSpec(0.3), 10**5)
    ks = np.unique(np.round(10 ** np.arange(3, 5.0001, 0.02)).astype(int))
    slope = np.polyfit(np.log(ks), np.log(np.abs(g.values[ks])), 1)[0]
    assert slope == pytest.approx(2 * 0.3 - 1, abs=0.02)


def test_farima_tail_envelope_holds():
    g = farima_acvf(FarimaSpec(0.3), 5000)
    k = np.arange(1, 5001, dtype=float)
    assert np.all(np.abs(g.values[1:]) <= g.tail.const * (1 + 1e-12) * k ** -g.tail.rate)


@pytest.mark.parametrize("name", sorted(MODELS))
def test_zoo_acvf_prefixes_are_psd(name):
    g = analytic_acvf(name, 256)
    assert toeplitz_min_eigenvalue(g) >= -1e-8 * g.values[0]


def test_domain_validation():
    with pytest.raises(DomainError):
        ArmaModel.white(0.0)
    with pytest.raises(DomainError):
        ArmaModel.white(-1.0)
    with pytest.raises(DomainError):
        FarimaSpec(0.5)
    with pytest.raises(DomainError):
        FarimaSpec(-0.6)
    with pytest.raises(DomainError):
        ArmaModel(ar=(0.5, 0.0))  # trailing zero changes the declared order
