"""Autocovariance sequences and the calculus of linear filtering.

A stationary filter with one-sided weights ``psi_0..psi_N`` applied to
unit white noise has autocovariances

    gw[k] = sum_n psi[n] * psi[n + k],

and applying the same filter to a stationary input with autocovariances
``gx`` produces output autocovariances given by the discrete correlation

    gy[k] = sum_{h = -inf..inf} gw[|h|] * gx[|k + h|],

where both sequences extend symmetrically to negative lags.  The module
computes these objects with explicit truncation-error accounting: the
infinite ``h``-sum is cut at a horizon ``H`` chosen from a certified
geometric envelope ``|gw[k]| <= C * r**k`` so the neglected mass is
provably below ``2 * C * r**(H+1) * gx[0] / (1 - r)``.

The same ``h``-sum splits into three one-sided partial sums

    xi1(k) = sum_{j>=1}   gw[k+j] * gx[j]      (h <= -k-1)
    xi2(k) = sum_{0<=j<k} gw[k-j] * gx[j]      (-k <= h <= -1)
    xi3(k) = sum_{j>=0}   gw[j]   * gx[k+j]    (h >= 0)

whose closed-form envelope bounds (``xi_bounds``) are what the
condition diagnostics verify lag by lag.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainError,
    InsufficientLagsError,
    NoGeometricEnvelopeError,
    RangeError,
    TailUnknownError,
)

# Relative target for the certified truncation error of the h-sum
# (relative to gw[0] * gx[0]); the horizon is capped at H_CAP with the
# actual residual bound reported.
TRUNC_TARGET_REL = 1e-12
H_CAP = 10**6

# Decay-rate estimates at or above this are indistinguishable from a
# power-law tail over desk-scale lag ranges and are rejected.
RATE_CEILING = 1 - 1e-3

# Direct per-lag dot products below this work estimate, FFT above.
_DIRECT_SELF_ACVF_MAX_OPS = 10**8


@dataclass(frozen=True)
class Tail:
    """Tail descriptor of an autocovariance sequence.

    kind "geometric": |gamma_k| <= const * rate**k on the computed range,
    0 <= rate < 1.  kind "power": |gamma_k| <= const * k**(-rate) for
    k >= 1 on the computed range (rate is the positive decay exponent).
    "zero": exactly zero beyond the computed support.  "unknown": no
    certified extrapolation.
    """

    kind: str
    const: float | None = None
    rate: float | None = None

    _KINDS = ("geometric", "power", "zero", "unknown")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise DomainError(f"unknown tail kind {self.kind!r}")

    @classmethod
    def geometric(cls, const: float, rate: float) -> "Tail":
        if not (0 <= rate < 1) or const < 0:
            raise DomainError(f"invalid geometric tail (C={const}, r={rate})")
        return cls("geometric", float(const), float(rate))

    @classmethod
    def power(cls, const: float, alpha: float) -> "Tail":
        if const < 0:
            raise DomainError(f"invalid power tail (c={const}, alpha={alpha})")
        return cls("power", float(const), float(alpha))

    @classmethod
    def zero(cls) -> "Tail":
        return cls("zero")

    @classmethod
    def unknown(cls) -> "Tail":
        return cls("unknown")


class AcvfSequence:
    """Truncated autocovariance sequence gamma_0..gamma_K with a tail tag.

    Values are validated against gamma_0 >= 0 and |gamma_k| <= gamma_0
    (Cauchy-Schwarz, with a small floating-point allowance) and stored
    read-only; gamma(-k) == gamma(k) by construction.
    """

    __slots__ = ("_values", "tail")

    def __init__(self, values, tail: Tail | None = None):
        arr = np.array(values, dtype=np.float64, copy=True, order="C")
        if arr.ndim != 1 or arr.size == 0:
            raise DomainError("autocovariances must form a non-empty 1-d sequence")
        if not np.all(np.isfinite(arr)):
            raise DomainError("autocovariances must be finite")
        g0 = arr[0]
        if g0 < 0:
            raise DomainError(f"gamma_0 must be non-negative, got {g0}")
        limit = g0 * (1 + 1e-9) + 1e-300
        if arr.size > 1 and np.abs(arr[1:]).max() > limit:
            k_bad = 1 + int(np.abs(arr[1:]).argmax())
            raise DomainError(
                f"|gamma_{k_bad}| = {abs(arr[k_bad])} exceeds gamma_0 = {g0}"
            )
        tail = tail if tail is not None else Tail.unknown()
        _check_tail_envelope(arr, tail)
        arr.flags.writeable = False
        self._values = arr
        self.tail = tail

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def k_max(self) -> int:
        return self._values.size - 1

    def __len__(self) -> int:
        return self._values.size

    def gamma(self, k: int) -> float:
        """gamma_k with symmetric extension; RangeError beyond the data."""
        k = abs(int(k))
        if k >= self._values.size:
            raise RangeError(f"lag {k} beyond computed range {self.k_max}")
        return float(self._values[k])

    def with_tail(self, tail: Tail) -> "AcvfSequence":
        return AcvfSequence(self._values, tail)

    def truncated(self, k_max: int) -> "AcvfSequence":
        if k_max > self.k_max:
            raise RangeError(f"cannot extend range {self.k_max} to {k_max}")
        return AcvfSequence(self._values[: k_max + 1], self.tail)

    def __repr__(self):
        return (f"AcvfSequence(k_max={self.k_max}, gamma_0={self._values[0]!r}, "
                f"tail={self.tail.kind})")


def _check_tail_envelope(arr: np.ndarray, tail: Tail) -> None:
    """Declared tails must hold on the computed range (small fp slack)."""
    a = np.abs(arr)
    if tail.kind == "geometric":
        k = np.arange(a.size, dtype=np.float64)
        env = tail.const * (1 + 1e-9) * tail.rate ** k + 1e-300
        bad = a > env
    elif tail.kind == "power":
        if a.size <= 1:
            return
        k = np.arange(1, a.size, dtype=np.float64)
        bad = a[1:] > tail.const * (1 + 1e-9) * k ** (-tail.rate) + 1e-300
    else:
        return
    if np.any(bad):
        k_bad = int(np.argmax(bad)) + (0 if tail.kind == "geometric" else 1)
        raise DomainError(
            f"declared {tail.kind} tail envelope violated at lag {k_bad}"
        )


@dataclass(frozen=True)
class ExpBoundFit:
    """Geometric envelope |gamma_k| <= C * r**k valid on the whole range.

    ``binding_lag`` is the k >= 1 where the envelope is tight (None when
    the sequence vanishes beyond lag 0); C itself binds at k = 0.
    """

    C: float
    r: float
    binding_lag: int | None
    lags_checked: int


@dataclass(frozen=True)
class XiTriple:
    """The three one-sided partial sums of gy[k] at a single lag."""

    k: int
    xi1: float
    xi2: float
    xi3: float

    @property
    def total(self) -> float:
        return self.xi1 + self.xi2 + self.xi3


@dataclass(frozen=True)
class ComposeResult:
    """Composed autocovariances plus certified truncation accounting."""

    acvf: AcvfSequence
    truncation_bound: float
    horizon: int


def fit_exponential_bound(acvf: AcvfSequence) -> ExpBoundFit:
    """Fit a valid geometric envelope, C minimal given r.

    With C0 = gamma_0, the smallest feasible rate is
    r* = max_{k>=1} (|gamma_k| / C0)**(1/k); r is located by bisecting
    the envelope predicate around r* so that |gamma_k| <= C0 * r**k
    holds in floating point at every computed lag, and C = C0 is then
    minimal for that r (the lag-0 term binds).

    Raises NoGeometricEnvelopeError when r* >= 1 - 1e-3: over the
    computed range the sequence decays too slowly to separate from a
    power-law tail (e.g. long-memory autocovariances).  The check is
    range-limited; longer ranges expose slow tails more reliably.
    """
    a = np.abs(acvf.values)
    g0 = a[0]
    k_top = a.size - 1
    nonzero = np.nonzero(a[1:])[0] + 1
    if g0 == 0.0 or nonzero.size == 0:
        return ExpBoundFit(C=float(g0), r=0.0, binding_lag=None, lags_checked=k_top)

    ks = nonzero.astype(np.float64)
    log_ratio = np.log(a[nonzero]) - np.log(g0)
    s = np.exp(log_ratio / ks)
    i_star = int(np.argmax(s))
    r_star = float(s[i_star])
    if r_star >= RATE_CEILING:
        raise NoGeometricEnvelopeError(
            f"per-lag decay rate estimate reaches {r_star:.6f} at lag "
            f"{int(nonzero[i_star])} of {k_top}; no geometric envelope "
            f"with rate < {RATE_CEILING} fits"
        )

    def envelope_holds(rate: float) -> bool:
        return bool(np.all(a[nonzero] <= g0 * rate ** ks))

    lo = r_star * (1 - 1e-9)
    hi = min(r_star * (1 + 1e-6), RATE_CEILING)
    while not envelope_holds(hi):
        if hi >= RATE_CEILING:
            raise NoGeometricEnvelopeError(
                f"envelope refinement escaped past rate {RATE_CEILING}"
            )
        hi = min(hi * (1 + 1e-6), RATE_CEILING)
    if envelope_holds(lo):
        hi = lo
    else:
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if envelope_holds(mid):
                hi = mid
            else:
                lo = mid
    r = hi
    tight = a[nonzero] / (g0 * r ** ks)
    return ExpBoundFit(
        C=float(g0),
        r=float(r),
        binding_lag=int(nonzero[np.argmax(tight)]),
        lags_checked=k_top,
    )


def filter_self_acvf(weights, k_max: int) -> AcvfSequence:
    """Autocovariances gw[k] = sum_n psi[n] psi[n+k] of a truncated filter.

    ``weights`` may be a FilterWeights or a bare coefficient array.
    Lags beyond the filter support are exactly zero.  The tail
    descriptor comes from fit_exponential_bound; if no geometric
    envelope fits, the tail is left unknown rather than failing.
    """
    psi = np.ascontiguousarray(getattr(weights, "coeffs", weights), dtype=np.float64)
    if psi.ndim != 1 or psi.size == 0:
        raise DomainError("filter weights must form a non-empty 1-d sequence")
    if k_max < 0:
        raise RangeError("k_max must be >= 0")
    n = psi.size
    out = np.zeros(k_max + 1)
    top = min(k_max, n - 1)
    if (top + 1) * n <= _DIRECT_SELF_ACVF_MAX_OPS:
        for k in range(top + 1):
            out[k] = np.dot(psi[: n - k], psi[k:])
    else:
        m = 1 << int(np.ceil(np.log2(2 * n)))
        spec = np.fft.rfft(psi, m)
        full = np.fft.irfft(spec * np.conj(spec), m)
        out[: top + 1] = full[: top + 1]
    try:
        tail = _tail_from_fit(fit_exponential_bound(AcvfSequence(_cs_clip(out))))
    except NoGeometricEnvelopeError:
        tail = Tail.unknown()
    return AcvfSequence(_cs_clip(out), tail)


def _cs_clip(values: np.ndarray) -> np.ndarray:
    # FFT round-off can push |gamma_k| a few ulp past gamma_0; clip back.
    g0 = values[0]
    if g0 > 0:
        np.clip(values[1:], -g0, g0, out=values[1:])
    return values


def _tail_from_fit(fit: ExpBoundFit) -> Tail:
    return Tail.geometric(fit.C, fit.r)


def _geometric_tail_of(gw: AcvfSequence, what: str) -> tuple[float, float]:
    """(C, r) of gw's declared geometric tail, verified on the range."""
    if gw.tail.kind == "zero":
        return float(np.abs(gw.values).max()), 0.0
    if gw.tail.kind != "geometric":
        raise TailUnknownError(
            f"{what} needs a certified geometric tail on the filter "
            f"autocovariances, got tail kind {gw.tail.kind!r}"
        )
    c, r = gw.tail.const, gw.tail.rate
    a = np.abs(gw.values)
    envelope = c * (1 + 1e-9) * r ** np.arange(a.size) + 1e-300
    if r == 0.0:
        envelope[1:] = 1e-300
    if np.any(a > envelope):
        k_bad = int(np.argmax(a > envelope))
        raise DomainError(
            f"declared geometric tail (C={c}, r={r}) violated at lag {k_bad}"
        )
    return float(c), float(r)


def _support_end(values: np.ndarray) -> int:
    nz = np.nonzero(values)[0]
    return int(nz[-1]) if nz.size else 0


def _horizon(C: float, r: float, gw0: float, gx0: float,
             gw_support: int) -> tuple[int, float]:
    """Truncation horizon H and the residual bound it certifies."""
    if C == 0.0 or gx0 == 0.0:
        return 0, 0.0
    if r == 0.0:
        return gw_support, 0.0
    # Smallest H with 2 C r^(H+1) gx0 / (1-r) < TRUNC_TARGET_REL * gw0 * gx0,
    # i.e. H + 1 > log(arg) / log(r).
    arg = TRUNC_TARGET_REL * gw0 * (1 - r) / (2.0 * C)
    h_req = 0 if arg >= 1.0 else int(np.floor(np.log(arg) / np.log(r)))
    h = max(0, min(h_req, gw_support, H_CAP))
    if h >= gw_support:
        return h, 0.0
    return h, 2.0 * C * r ** (h + 1) * gx0 / (1.0 - r)


def compose_acvf(gw: AcvfSequence, gx: AcvfSequence, k_max: int) -> ComposeResult:
    """Autocovariances of a filtered process from gw and the input's gx.

    gy[k] = sum_{h=-H..H} gw[|h|] * gx[|k+h|] for 0 <= k <= k_max, with
    H certified from gw's geometric tail so the omitted mass is below
    TRUNC_TARGET_REL * gw[0] * gx[0] (exactly zero when H covers gw's
    support).  gx must be computed out to k_max + H.
    """
    if k_max < 0:
        raise RangeError("k_max must be >= 0")
    C, r = _geometric_tail_of(gw, "compose_acvf")
    support = _support_end(gw.values)
    h, bound = _horizon(C, r, gw.values[0], gx.values[0], support)
    need = k_max + h
    if gx.k_max < need:
        raise InsufficientLagsError(
            f"input acvf computed to lag {gx.k_max}, need {need} "
            f"(k_max={k_max} + horizon={h})"
        )
    w = np.concatenate([gw.values[h:0:-1], gw.values[: h + 1]])
    gx_ext = np.concatenate([gx.values[h:0:-1], gx.values[: k_max + h + 1]])
    vals = np.correlate(gx_ext, w, mode="valid")
    tail = _composed_tail(gx, vals)
    return ComposeResult(AcvfSequence(_cs_clip(vals), tail), float(bound), h)


def _composed_tail(gx: AcvfSequence, vals: np.ndarray) -> Tail:
    """Tail class is inherited from the input; constants refit on output."""
    if gx.tail.kind == "power":
        alpha = gx.tail.rate
        k = np.arange(1, vals.size, dtype=np.float64)
        c = float(np.max(np.abs(vals[1:]) * k ** alpha)) if vals.size > 1 else 0.0
        return Tail.power(c, alpha)
    if gx.tail.kind in ("geometric", "zero"):
        try:
            return _tail_from_fit(fit_exponential_bound(AcvfSequence(_cs_clip(vals.copy()))))
        except NoGeometricEnvelopeError:
            return Tail.unknown()
    return Tail.unknown()


def xi_decomposition(gw: AcvfSequence, gx: AcvfSequence, k: int) -> XiTriple:
    """Split gy[k] into the three one-sided partial sums.

    Truncation follows the same certified-horizon discipline as
    compose_acvf; xi1 and xi3 additionally stop at the computed range
    of gw (their omitted terms sit under the same geometric envelope).
    """
    k = int(k)
    if k < 1:
        raise RangeError("xi decomposition needs k >= 1")
    C, r = _geometric_tail_of(gw, "xi_decomposition")
    support = _support_end(gw.values)
    h, _ = _horizon(C, r, gw.values[0], gx.values[0], support)
    if gw.k_max < h:
        raise InsufficientLagsError(
            f"filter acvf computed to lag {gw.k_max}, need horizon {h}"
        )
    if gx.k_max < k + h:
        raise InsufficientLagsError(
            f"input acvf computed to lag {gx.k_max}, need {k + h} "
            f"(k={k} + horizon={h})"
        )
    gwv, gxv = gw.values, gx.values
    j1 = min(gw.k_max - k, gx.k_max)
    xi1 = float(np.dot(gwv[k + 1: k + 1 + j1], gxv[1: 1 + j1])) if j1 >= 1 else 0.0
    # xi2 over j in [j2_lo, k-1]: filter lags above the computed range sit
    # under the same geometric envelope the horizon certifies
    j2_lo = max(0, k - gw.k_max)
    xi2 = float(np.dot(gwv[k - j2_lo: 0: -1], gxv[j2_lo: k]))
    j3 = min(gx.k_max - k, support)
    xi3 = float(np.dot(gwv[: j3 + 1], gxv[k: k + j3 + 1]))
    return XiTriple(k=k, xi1=xi1, xi2=xi2, xi3=xi3)


def xi_bounds(fit: ExpBoundFit, gx: AcvfSequence, k: int) -> tuple[float, float, float]:
    """Closed-form envelope bounds on |xi1|, |xi2|, |xi3| at lag k.

    With |gw[j]| <= C r**j and gx0 = gx[0]:

      |xi1(k)| <= C * gx0 * r**k * r / (1 - r)
      |xi2(k)| <= C * gx0 * r**(k/2) / (1 - r)
                  + C * |gx[j*]| * r / (1 - r),
                  j* = argmax |gx[j]| over floor(k/2)+1 <= j <= k-1
                  (ties to the smallest j; term absent for k < 2)
      |xi3(k)| <= C * sum_{j=0..K_x-k} r**j * |gx[k+j]|   (truncated)
    """
    k = int(k)
    if k < 1:
        raise RangeError("xi bounds need k >= 1")
    if gx.k_max < k:
        raise InsufficientLagsError(f"input acvf too short for lag {k}")
    C, r = fit.C, fit.r
    gx0 = float(gx.values[0])
    geo = r / (1.0 - r) if r < 1.0 else np.inf
    b1 = C * gx0 * r ** k * geo
    if k >= 2:
        lo = k // 2 + 1
        seg = np.abs(gx.values[lo:k])
        peak = float(seg.max()) if seg.size else 0.0
    else:
        peak = 0.0
    b2 = C * gx0 * r ** (k / 2.0) / (1.0 - r) + C * peak * geo
    j3 = gx.k_max - k
    b3 = C * float(np.dot(r ** np.arange(j3 + 1), np.abs(gx.values[k:])))
    return float(b1), float(b2), float(b3)


def argmax_abs_gamma(gx: AcvfSequence, k: int) -> int | None:
    """j* of the xi2 bound: argmax |gx[j]|, floor(k/2)+1 <= j <= k-1."""
    lo = k // 2 + 1
    if lo > k - 1:
        return None
    seg = np.abs(gx.values[lo:k])
    return lo + int(np.argmax(seg))


def toeplitz_min_eigenvalue(acvf: AcvfSequence, k_max: int | None = None) -> float:
    """Smallest eigenvalue of the (K+1)x(K+1) Toeplitz matrix of the prefix."""
    K = acvf.k_max if k_max is None else int(k_max)
    if K > acvf.k_max:
        raise RangeError(f"prefix {K} beyond computed range {acvf.k_max}")
    idx = np.arange(K + 1)
    mat = acvf.values[np.abs(idx[:, None] - idx[None, :])]
    return float(np.linalg.eigvalsh(mat)[0])
