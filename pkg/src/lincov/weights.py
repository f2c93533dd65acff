"""One-sided filter weight sequences for rational transfer functions.

``arma_psi_weights`` expands theta(z)/phi(z) (the causal MA-infinity
form of an ARMA model) and ``arma_pi_weights`` expands phi(z)/theta(z)
(the inverse, AR-infinity form); both use the linear recursion

    psi_n = theta_n + sum_{i=1..p} phi_i psi_{n-i},    theta_0 = 1,

with the roles of the polynomials swapped for the inverse direction.
``long_division_oracle`` is a deliberately independent synthetic-division
implementation used to cross-check the recursion.

Truncated sequences carry a declared geometric tail envelope
``|psi_n| <= tail_const * tail_ratio**n`` for computed ``n >=
tail_start``.  The ratio is estimated as the largest ratio
``|psi_{n+1} / psi_n|`` over the last 20 computed lags (zero
coefficients skipped, clamped below 1 - 1e-6); for rational models it
is additionally capped by 1/min-root-modulus + 0.01, which keeps the
envelope tight when complex roots make successive ratios oscillate.
"""

import numpy as np

from . import backend
from .errors import DomainError
from .models import ArmaModel, require_invertible, require_stationary

RATIO_CLAMP = 1 - 1e-6
RATIO_MARGIN = 0.01
TAIL_CUTOFF_REL = 1e-14  # default truncation: envelope below this times sum|psi|
N_MAX_CAP = 10**5
_RATIO_WINDOW = 20


class FilterWeights:
    """Truncated one-sided weights psi_0..psi_N with a tail envelope."""

    __slots__ = ("_coeffs", "tail_ratio", "tail_const", "tail_start")

    def __init__(self, coeffs, tail_ratio: float, tail_const: float,
                 tail_start: int = 0):
        arr = np.array(coeffs, dtype=np.float64, copy=True, order="C")
        if arr.ndim != 1 or arr.size == 0:
            raise DomainError("weights must form a non-empty 1-d sequence")
        if not np.all(np.isfinite(arr)):
            raise DomainError("weights must be finite")
        if not (0 <= tail_ratio < 1):
            raise DomainError(f"tail_ratio must lie in [0, 1), got {tail_ratio}")
        if not (np.isfinite(tail_const) and tail_const >= 0):
            raise DomainError(f"tail_const must be finite and >= 0, got {tail_const}")
        _check_envelope(arr, tail_ratio, tail_const, tail_start)
        arr.flags.writeable = False
        self._coeffs = arr
        self.tail_ratio = float(tail_ratio)
        self.tail_const = float(tail_const)
        self.tail_start = int(tail_start)

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def n_top(self) -> int:
        return self._coeffs.size - 1

    def __len__(self) -> int:
        return self._coeffs.size

    def abs_sum(self) -> float:
        """sum |psi_n| over the computed range plus the geometric tail bound."""
        total = float(np.abs(self._coeffs).sum())
        if self.tail_ratio > 0:
            n = self._coeffs.size
            total += (self.tail_const * self.tail_ratio ** n
                      / (1 - self.tail_ratio))
        return total

    @classmethod
    def from_coeffs(cls, coeffs, ratio_cap: float | None = None) -> "FilterWeights":
        arr = np.ascontiguousarray(coeffs, dtype=np.float64)
        ratio, const, start = _estimate_tail(arr, ratio_cap)
        return cls(arr, ratio, const, start)

    def __repr__(self):
        return (f"FilterWeights(n_top={self.n_top}, "
                f"tail_ratio={self.tail_ratio:.6g}, tail_const={self.tail_const:.6g})")


def _check_envelope(arr, ratio, const, start):
    tail = arr[start:]
    if tail.size == 0:
        return
    if ratio == 0.0:
        # 0**0 = 1: lag `start` is bounded by const alone, later lags by 0
        if start == 0 and abs(arr[0]) > const * (1 + 1e-12):
            raise DomainError("tail_const too small for psi_0 under tail_ratio 0")
        zero_from = max(start, 1)
        if np.any(arr[zero_from:] != 0.0):
            raise DomainError("tail_ratio 0 declared but nonzero tail coefficients")
        return
    n = np.arange(start, arr.size, dtype=np.float64)
    nz = np.abs(tail) > 0
    if not np.any(nz):
        return
    lhs = np.log(np.abs(tail[nz]))
    rhs = (np.log(const) if const > 0 else -np.inf) + n[nz] * np.log(ratio)
    if np.any(lhs > rhs + 1e-9):
        bad = int(n[nz][np.argmax(lhs - rhs)])
        raise DomainError(f"declared tail envelope violated at n = {bad}")


def _estimate_tail(arr: np.ndarray, ratio_cap: float | None):
    """(tail_ratio, tail_const, tail_start) per the last-window ratio rule."""
    nz = np.nonzero(arr)[0]
    if nz.size == 0:
        return 0.0, 0.0, 0
    last_nz = int(nz[-1])
    if last_nz < arr.size - 1:
        # trailing zeros close the sequence: zero tail beyond the support
        return 0.0, 0.0, last_nz + 1
    ratios = []
    for n in range(max(0, arr.size - 1 - _RATIO_WINDOW), arr.size - 1):
        if arr[n] != 0.0 and arr[n + 1] != 0.0:
            ratios.append(abs(arr[n + 1] / arr[n]))
    if not ratios:
        # no adjacent nonzero pair in the window (sparse oscillation)
        ratios = [RATIO_CLAMP]
    ratio = min(max(ratios), RATIO_CLAMP)
    if ratio_cap is not None:
        ratio = min(ratio, max(ratio_cap, 0.0))
    if ratio == 0.0:
        return 0.0, 0.0, last_nz + 1
    n = nz.astype(np.float64)
    log_const = float(np.max(np.log(np.abs(arr[nz])) - n * np.log(ratio)))
    const = float(np.exp(log_const))
    if not np.isfinite(const):
        ratio = RATIO_CLAMP
        log_const = float(np.max(np.log(np.abs(arr[nz])) - n * np.log(ratio)))
        const = float(np.exp(log_const))
    # nudge up so the envelope holds exactly in floating point
    const *= 1 + 1e-12
    return float(ratio), const, 0


def _truncation_order(ratio: float, const: float, abs_sum: float) -> int:
    """Smallest n with const * ratio**n < TAIL_CUTOFF_REL * abs_sum."""
    if ratio == 0.0 or const == 0.0:
        return 0
    target = TAIL_CUTOFF_REL * abs_sum
    if target <= 0:
        return N_MAX_CAP
    n = int(np.ceil((np.log(target) - np.log(const)) / np.log(ratio)))
    return max(0, min(n, N_MAX_CAP))


def _expand_rational(num_ar, num_ma, n_max: int | None, ratio_cap: float):
    """Shared psi/pi expansion with the default-truncation rule."""
    phi = np.asarray(num_ar, dtype=np.float64)
    theta = np.asarray(num_ma, dtype=np.float64)
    if n_max is not None:
        if n_max < 0:
            raise DomainError("n_max must be >= 0")
        coeffs = backend.arma_psi_recursion(phi, theta, int(n_max))
        return FilterWeights.from_coeffs(coeffs, ratio_cap)
    n = 128
    while True:
        coeffs = backend.arma_psi_recursion(phi, theta, n)
        w = FilterWeights.from_coeffs(coeffs, ratio_cap)
        cutoff = TAIL_CUTOFF_REL * float(np.abs(coeffs).sum())
        if w.tail_const * w.tail_ratio ** n < cutoff or n >= N_MAX_CAP:
            break
        n = min(2 * n, N_MAX_CAP)
    if w.tail_ratio == 0.0:
        n_best = max(0, w.tail_start - 1)  # finite support: keep it all
    else:
        n_best = _truncation_order(w.tail_ratio, w.tail_const,
                                   float(np.abs(coeffs).sum()))
    if n_best < n:
        return FilterWeights.from_coeffs(coeffs[: n_best + 1], ratio_cap)
    return w


def arma_psi_weights(model: ArmaModel, n_max: int | None = None) -> FilterWeights:
    """Forward weights: power-series coefficients of theta(z)/phi(z).

    With n_max omitted, truncation stops once the declared tail envelope
    falls below 1e-14 of sum |psi| (capped at 1e5 coefficients).
    """
    report = require_stationary(model)
    cap = (1.0 / report.min_modulus if np.isfinite(report.min_modulus) else 0.0)
    return _expand_rational(model.ar, model.ma, n_max, cap + RATIO_MARGIN)


def arma_pi_weights(model: ArmaModel, n_max: int | None = None) -> FilterWeights:
    """Inverse weights: power-series coefficients of phi(z)/theta(z).

    Requires invertibility (a theta root on or inside the unit circle
    makes the expansion non-summable).  Same truncation rule as
    arma_psi_weights; the declared tail_ratio never exceeds
    1/min-theta-root-modulus + 0.01.
    """
    report = require_invertible(model)
    cap = (1.0 / report.min_modulus if np.isfinite(report.min_modulus) else 0.0)
    # phi(z)/theta(z) = (1 + sum(-phi_i) z^i) / (1 - sum(-theta_j) z^j)
    neg_theta = tuple(-t for t in model.ma)
    neg_phi = tuple(-c for c in model.ar)
    return _expand_rational(neg_theta, neg_phi, n_max, cap + RATIO_MARGIN)


def long_division_oracle(numerator, denominator, n_max: int) -> np.ndarray:
    """First n_max+1 power-series coefficients of numerator/denominator.

    Plain synthetic division on raw coefficient arrays (ascending
    powers); no model conventions, no stationarity assumptions.  Kept
    independent of the recursion kernels on purpose.
    """
    num = [float(c) for c in numerator]
    den = [float(c) for c in denominator]
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    if not den or den[0] == 0.0:
        raise DomainError("denominator constant term must be nonzero")
    out = []
    for n in range(n_max + 1):
        acc = num[n] if n < len(num) else 0.0
        for i in range(1, min(n, len(den) - 1) + 1):
            acc -= den[i] * out[n - i]
        out.append(acc / den[0])
    return np.asarray(out)


def fractional_integration_weights(d: float, n_max: int) -> FilterWeights:
    """Binomial weights of (1 - z)**(-d): psi_n = psi_{n-1} (n - 1 + d) / n.

    These decay like n**(d-1), a power law, so the declared envelope is
    the clamped near-1 ratio; truncation bias is the caller's concern
    (simulation documents it).
    """
    if not abs(d) < 0.5:
        raise DomainError(f"fractional order d must satisfy |d| < 0.5, got {d}")
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    psi = np.empty(n_max + 1)
    psi[0] = 1.0
    if n_max:
        n = np.arange(1, n_max + 1, dtype=np.float64)
        psi[1:] = np.cumprod((n - 1 + d) / n)
    return FilterWeights.from_coeffs(psi)
