"""Stationary linear-process models and their exact autocovariances.

Polynomial convention (Box-Jenkins), fixed throughout the package:

    phi(z)   = 1 - phi_1 z - ... - phi_p z^p      (autoregressive)
    theta(z) = 1 + theta_1 z + ... + theta_q z^q  (moving average)

so the model reads ``phi(B) X_t = theta(B) a_t`` with innovation
variance ``sigma2``.  A model is stationary iff every root of phi lies
strictly outside the closed unit disk, invertible iff every root of
theta does; the boundary test fails closed (modulus within 1e-10 of the
unit circle counts as inside).

Fractionally integrated models carry an extra differencing order
``d in (-0.5, 0.5)``; their pure-fractional autocovariances follow the
stable ratio recursion ``gamma_{k+1} = gamma_k (k + d) / (k + 1 - d)``
anchored at ``gamma_0 = sigma2 * Gamma(1-2d) / Gamma(1-d)^2`` (computed
through log-gamma so d near +-0.5 cannot overflow).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import backend
from .acvf import AcvfSequence, Tail, fit_exponential_bound
from .errors import DomainError, NoGeometricEnvelopeError, NonInvertibleError, NonStationaryError, RangeError

# Fail-closed margin for the unit-circle test.
BOUNDARY_TOL = 1e-10


@dataclass(frozen=True)
class ArmaModel:
    """ARMA(p, q) coefficients plus innovation variance.

    ``ar`` holds (phi_1..phi_p), ``ma`` holds (theta_1..theta_q); both
    may be empty (p = q = 0 is white noise).
    """

    ar: tuple[float, ...] = ()
    ma: tuple[float, ...] = ()
    sigma2: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "ar", tuple(float(c) for c in self.ar))
        object.__setattr__(self, "ma", tuple(float(c) for c in self.ma))
        object.__setattr__(self, "sigma2", float(self.sigma2))
        for name in ("ar", "ma"):
            coeffs = getattr(self, name)
            if coeffs and not all(math.isfinite(c) for c in coeffs):
                raise DomainError(f"{name} coefficients must be finite")
            if coeffs and coeffs[-1] == 0.0:
                raise DomainError(f"trailing zero in {name} coefficients; drop it")
        if not (math.isfinite(self.sigma2) and self.sigma2 > 0):
            raise DomainError(f"sigma2 must be positive, got {self.sigma2}")

    @property
    def p(self) -> int:
        return len(self.ar)

    @property
    def q(self) -> int:
        return len(self.ma)

    def phi_poly(self) -> np.ndarray:
        """Coefficients of phi(z), ascending powers."""
        return np.concatenate([[1.0], -np.asarray(self.ar, dtype=np.float64)])

    def theta_poly(self) -> np.ndarray:
        """Coefficients of theta(z), ascending powers."""
        return np.concatenate([[1.0], np.asarray(self.ma, dtype=np.float64)])

    @classmethod
    def white(cls, sigma2: float = 1.0) -> "ArmaModel":
        return cls((), (), sigma2)


@dataclass(frozen=True)
class FarimaSpec:
    """Fractional differencing order plus an optional short-memory part.

    ``arma is None`` means pure FARIMA(0, d, 0) with unit innovation
    variance; otherwise the innovation variance is taken from ``arma``.
    """

    d: float
    arma: ArmaModel | None = None

    def __post_init__(self):
        object.__setattr__(self, "d", float(self.d))
        if not (math.isfinite(self.d) and abs(self.d) < 0.5):
            raise DomainError(f"fractional order d must satisfy |d| < 0.5, got {self.d}")

    @property
    def sigma2(self) -> float:
        return self.arma.sigma2 if self.arma is not None else 1.0


@dataclass(frozen=True, eq=False)
class RootReport:
    """Roots of one model polynomial with the unit-circle verdict."""

    polynomial: str
    roots: np.ndarray = field(repr=False)
    moduli: np.ndarray = field(repr=False)
    min_modulus: float
    ok: bool


def _root_report(poly_coeffs: np.ndarray, which: str) -> RootReport:
    if poly_coeffs.size <= 1:
        empty = np.empty(0, dtype=np.complex128)
        return RootReport(which, empty, np.empty(0), float("inf"), True)
    roots = np.polynomial.polynomial.polyroots(poly_coeffs)
    moduli = np.abs(roots)
    min_mod = float(moduli.min())
    return RootReport(which, roots, moduli, min_mod, min_mod > 1.0 + BOUNDARY_TOL)


def check_stationary(model: ArmaModel) -> RootReport:
    """Roots of phi(z) via companion-matrix eigenvalues, with verdict."""
    return _root_report(model.phi_poly(), "ar")


def check_invertible(model: ArmaModel) -> RootReport:
    """Roots of theta(z) via companion-matrix eigenvalues, with verdict."""
    return _root_report(model.theta_poly(), "ma")


def require_stationary(model: ArmaModel) -> RootReport:
    report = check_stationary(model)
    if not report.ok:
        raise NonStationaryError(
            f"ar polynomial has a root of modulus {report.min_modulus:.12g} "
            f"on or inside the unit circle"
        )
    return report


def require_invertible(model: ArmaModel) -> RootReport:
    report = check_invertible(model)
    if not report.ok:
        raise NonInvertibleError(
            f"ma polynomial has a root of modulus {report.min_modulus:.12g} "
            f"on or inside the unit circle"
        )
    return report


def _ma_sum_rhs(model: ArmaModel, k_top: int) -> np.ndarray:
    """sigma2 * sum_{j=k..q} theta_j psi_{j-k} for k = 0..k_top."""
    q = model.q
    theta_full = model.theta_poly()
    psi_prefix = backend.arma_psi_recursion(
        np.asarray(model.ar, dtype=np.float64),
        np.asarray(model.ma, dtype=np.float64),
        q,
    )
    rhs = np.zeros(k_top + 1)
    for k in range(min(k_top, q) + 1):
        rhs[k] = model.sigma2 * float(np.dot(theta_full[k:], psi_prefix[: q - k + 1]))
    return rhs


def arma_acvf(model: ArmaModel, k_max: int) -> AcvfSequence:
    """Exact autocovariances gamma_0..gamma_k_max of a stationary ARMA model.

    gamma_k - sum_i phi_i gamma_{|k-i|} = sigma2 * sum_{j>=k} theta_j
    psi_{j-k} holds at every lag; the first p+1 lags are solved as a
    linear system and the rest extend by the (then homogeneous beyond q)
    recursion.  The tail descriptor records the fitted geometric
    envelope.
    """
    if k_max < 0:
        raise RangeError("k_max must be >= 0")
    require_stationary(model)
    p, q = model.p, model.q
    phi = np.asarray(model.ar, dtype=np.float64)
    rhs = _ma_sum_rhs(model, max(p, q, k_max))
    a = np.eye(p + 1)
    for k in range(p + 1):
        for i in range(1, p + 1):
            a[k, abs(k - i)] -= phi[i - 1]
    head = np.linalg.solve(a, rhs[: p + 1])
    gamma = np.empty(max(k_max, p) + 1)
    gamma[: p + 1] = head
    if p:
        for k in range(p + 1, k_max + 1):
            gamma[k] = rhs[k] + float(np.dot(phi, gamma[k - 1: k - 1 - p: -1]))
    elif k_max > 0:
        gamma[1: k_max + 1] = rhs[1: k_max + 1]
    values = gamma[: k_max + 1]
    try:
        tail = _geometric_tail(values)
    except NoGeometricEnvelopeError:
        # Cannot happen for a strictly stationary model at sane ranges,
        # but stay honest rather than mislabel.
        tail = Tail.unknown()
    return AcvfSequence(values, tail)


def _geometric_tail(values: np.ndarray) -> Tail:
    fit = fit_exponential_bound(AcvfSequence(values))
    return Tail.geometric(fit.C, fit.r)


def _farima00_values(d: float, k_max: int, sigma2: float) -> np.ndarray:
    g0 = sigma2 * math.exp(math.lgamma(1 - 2 * d) - 2 * math.lgamma(1 - d))
    gamma = np.empty(k_max + 1)
    gamma[0] = g0
    if k_max:
        k = np.arange(k_max, dtype=np.float64)
        gamma[1:] = g0 * np.cumprod((k + d) / (k + 1 - d))
    return gamma


def _power_tail(values: np.ndarray, alpha: float) -> Tail:
    if values.size <= 1:
        return Tail.power(0.0, alpha)
    k = np.arange(1, values.size, dtype=np.float64)
    return Tail.power(float(np.max(np.abs(values[1:]) * k ** alpha)), alpha)


def farima_acvf(spec: FarimaSpec, k_max: int) -> AcvfSequence:
    """Autocovariances of a FARIMA process.

    Pure FARIMA(0, d, 0) uses the exact ratio recursion; a nontrivial
    ARMA part is applied on top by composing the fractional
    autocovariances with the ARMA filter's self-covariances
    (compose_acvf).  d = 0 falls through to arma_acvf on the same code
    path, so the two agree exactly.
    """
    if k_max < 0:
        raise RangeError("k_max must be >= 0")
    arma = spec.arma if spec.arma is not None else ArmaModel.white(1.0)
    if spec.d == 0.0:
        return arma_acvf(arma, k_max)
    alpha = 1.0 - 2.0 * spec.d
    if arma.p == 0 and arma.q == 0:
        values = _farima00_values(spec.d, k_max, arma.sigma2)
        return AcvfSequence(values, _power_tail(values, alpha))
    require_stationary(arma)
    from .acvf import compose_acvf, filter_self_acvf
    from .weights import arma_psi_weights

    unit = ArmaModel(arma.ar, arma.ma, 1.0)
    psi = arma_psi_weights(unit)
    k_w = len(psi.coeffs) + 8
    gw = filter_self_acvf(psi, k_w)
    base_values = _farima00_values(spec.d, k_max + k_w, arma.sigma2)
    base = AcvfSequence(base_values, _power_tail(base_values, alpha))
    # the composition inherits the power tail class and refits its constant
    return compose_acvf(gw, base, k_max).acvf
