"""Numerical diagnostics for the two tail conditions on autocovariances.

For a sequence gamma_k the two conditions of interest are

    (B)  |gamma_k| * ln k  ->  0,
    (S)  sum_k |gamma_k| / k**epsilon  <  infinity   for some epsilon < 1.

Limits are undecidable from finitely many lags, so verdicts combine two
kinds of evidence, each reported with its route:

* certified tails: a "geometric" descriptor implies both conditions; a
  "power" descriptor with exact decay order k**(-alpha) implies (B) iff
  alpha > 0 and (S) iff alpha + epsilon > 1 (the fail side of (S) uses
  the divergent integral comparison).
* finite-lag thresholds (used when the tail is unknown): (B) passes
  when the statistic's last-decade maximum falls below 0.1x its
  first-decade maximum and the top-decade log-log trend slope is below
  -0.05, and fails when the last-decade minimum exceeds the
  first-decade maximum; (S) passes when every per-grid-step increment
  of the partial sums over the last decade is below 1e-6 of the total.
  Anything in between is reported as inconclusive.

Statistics are sampled on a geometric lag grid of about 50 points per
decade.  All thresholds are ratios of the data, so verdicts are
invariant under positive rescaling of the sequence.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .acvf import (
    AcvfSequence,
    ExpBoundFit,
    Tail,
    compose_acvf,
    fit_exponential_bound,
    xi_bounds,
    xi_decomposition,
)
from .errors import DomainError, RangeError

GRID_PER_DECADE = 50
DECADE_DECAY_FACTOR = 0.1
TREND_SLOPE_MAX = -0.05
STEP_INCREMENT_REL = 1e-6
POWER_MARGIN = 0.05
DEFAULT_EPSILON = 0.8
DEFAULT_K_MIN = 2
DEFAULT_K_MAX = 10**5


def geometric_lag_grid(k_min: int, k_max: int,
                       per_decade: int = GRID_PER_DECADE) -> np.ndarray:
    """Integer lags, ~per_decade points per decade, endpoints included."""
    if not (1 <= k_min <= k_max):
        raise RangeError(f"invalid lag range [{k_min}, {k_max}]")
    n_steps = int(np.ceil(per_decade * math.log10(k_max / k_min))) if k_max > k_min else 0
    ks = k_min * 10.0 ** (np.arange(n_steps + 1) / per_decade)
    ks = np.unique(np.round(ks).astype(np.int64))
    ks = ks[(ks >= k_min) & (ks <= k_max)]
    if ks.size == 0 or ks[-1] != k_max:
        ks = np.append(ks, k_max)
    return ks


def _verified_tail(acvf: AcvfSequence) -> Tail:
    """The declared tail, demoted to unknown if its envelope fails on range."""
    t = acvf.tail
    a = np.abs(acvf.values)
    k = np.arange(a.size, dtype=np.float64)
    if t.kind == "geometric":
        if np.all(a <= t.const * (1 + 1e-9) * t.rate ** k + 1e-300):
            return t
    elif t.kind == "power":
        env = np.empty_like(a)
        env[0] = np.inf
        if a.size > 1:
            env[1:] = t.const * (1 + 1e-9) * k[1:] ** (-t.rate) + 1e-300
        if np.all(a <= env):
            return t
    elif t.kind == "zero":
        return t
    elif t.kind == "unknown":
        return t
    return Tail.unknown()


@dataclass(frozen=True)
class BermanSection:
    """Evidence and verdict for the |gamma_k| ln k -> 0 condition."""

    stats: list = field(repr=False)  # (k, b_k) pairs on the lag grid
    trend: float | None
    verdict: str
    route: str
    first_decade_max: float
    last_decade_max: float
    empirical_threshold: int | None

    def to_json_dict(self) -> dict:
        return {
            "stats": [[int(k), float(b)] for k, b in self.stats],
            "trend": self.trend,
            "verdict": self.verdict,
            "route": self.route,
            "first_decade_max": self.first_decade_max,
            "last_decade_max": self.last_decade_max,
            "empirical_threshold": self.empirical_threshold,
        }


@dataclass(frozen=True)
class SummabilitySection:
    """Evidence and verdict for the weighted-summability condition."""

    epsilon: float
    partial_sums: list = field(repr=False)  # (K, S_K) pairs on the lag grid
    tail_estimate: float | None
    verdict: str
    route: str
    rel_decade_increment: float
    max_rel_step_increment: float

    def to_json_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "partial_sums": [[int(k), float(s)] for k, s in self.partial_sums],
            "tail_estimate": self.tail_estimate,
            "verdict": self.verdict,
            "route": self.route,
            "rel_decade_increment": self.rel_decade_increment,
            "max_rel_step_increment": self.max_rel_step_increment,
        }


@dataclass(frozen=True)
class XiCheck:
    """One lag of the three-term split with its envelope bounds."""

    k: int
    xi1: float
    xi2: float
    xi3: float
    bound1: float
    bound2: float
    bound3: float
    ok: bool

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "xi1": self.xi1, "xi2": self.xi2, "xi3": self.xi3,
            "bound1": self.bound1, "bound2": self.bound2, "bound3": self.bound3,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class ConditionReport:
    """Combined diagnostic report; sections absent when not computed."""

    berman: BermanSection | None = None
    summability: SummabilitySection | None = None
    xi_checks: tuple[XiCheck, ...] | None = None
    input_berman: BermanSection | None = None
    input_summability: SummabilitySection | None = None
    envelope: ExpBoundFit | None = None
    theorem_ok: bool | None = None

    def to_json_dict(self) -> dict:
        out: dict = {}
        if self.berman is not None:
            out["berman"] = self.berman.to_json_dict()
        if self.summability is not None:
            out["summability"] = self.summability.to_json_dict()
        if self.xi_checks is not None:
            out["xi_checks"] = [c.to_json_dict() for c in self.xi_checks]
        if self.input_berman is not None or self.input_summability is not None:
            out["input_conditions"] = {
                "berman": None if self.input_berman is None
                else self.input_berman.to_json_dict(),
                "summability": None if self.input_summability is None
                else self.input_summability.to_json_dict(),
            }
        if self.envelope is not None:
            out["envelope"] = {
                "C": self.envelope.C,
                "r": self.envelope.r,
                "binding_lag": self.envelope.binding_lag,
                "lags_checked": self.envelope.lags_checked,
            }
        if self.theorem_ok is not None:
            out["theorem_ok"] = self.theorem_ok
        return out


def _decade_masks(grid: np.ndarray):
    first = grid <= grid[0] * 10
    last = grid >= grid[-1] / 10
    return first, last


def _trend_slope(grid: np.ndarray, b: np.ndarray) -> float | None:
    _, last = _decade_masks(grid)
    mask = last & (b > 0)
    if mask.sum() < 2:
        return None
    x = np.log(grid[mask].astype(np.float64))
    y = np.log(b[mask])
    return float(np.polyfit(x, y, 1)[0])


def berman_diagnostic(acvf: AcvfSequence, k_min: int = DEFAULT_K_MIN,
                      k_max: int | None = None) -> BermanSection:
    """Evaluate b_k = |gamma_k| ln k on a geometric grid and judge it."""
    if k_max is None:
        k_max = acvf.k_max
    if k_min < 2:
        raise RangeError("berman diagnostic needs k_min >= 2 (ln 1 = 0)")
    if k_max > acvf.k_max:
        raise RangeError(f"k_max {k_max} beyond computed range {acvf.k_max}")
    if k_min > k_max:
        raise RangeError(f"empty lag range [{k_min}, {k_max}]")
    grid = geometric_lag_grid(k_min, k_max)
    b = np.abs(acvf.values[grid]) * np.log(grid)
    first, last = _decade_masks(grid)
    first_max = float(b[first].max())
    last_max = float(b[last].max())
    last_min = float(b[last].min())
    trend = _trend_slope(grid, b)

    delta = DECADE_DECAY_FACTOR * first_max
    suffix_max = np.maximum.accumulate(b[::-1])[::-1]
    below = suffix_max <= delta
    threshold_k = int(grid[np.argmax(below)]) if below.any() else None

    tail = _verified_tail(acvf)
    if not b.any():
        route, verdict = "zero", "pass"
    elif tail.kind in ("geometric", "zero"):
        route, verdict = f"certified-{tail.kind}", "pass"
    elif tail.kind == "power":
        route = "certified-power"
        verdict = "pass" if tail.rate > 0 else "fail"
    else:
        route = "threshold"
        if (last_max < DECADE_DECAY_FACTOR * first_max
                and trend is not None and trend < TREND_SLOPE_MAX):
            verdict = "pass"
        elif last_min > first_max:
            verdict = "fail"
        else:
            verdict = "inconclusive"
    return BermanSection(
        stats=list(zip(grid.tolist(), b.tolist())),
        trend=trend,
        verdict=verdict,
        route=route,
        first_decade_max=first_max,
        last_decade_max=last_max,
        empirical_threshold=threshold_k,
    )


def summability_diagnostic(acvf: AcvfSequence, epsilon: float = DEFAULT_EPSILON,
                           k_max: int | None = None) -> SummabilitySection:
    """Partial sums of |gamma_k| / k**epsilon with a certified tail estimate."""
    if not (0 < epsilon < 1):
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    if k_max is None:
        k_max = acvf.k_max
    if k_max > acvf.k_max:
        raise RangeError(f"k_max {k_max} beyond computed range {acvf.k_max}")
    if k_max < 1:
        raise RangeError("summability diagnostic needs k_max >= 1")
    k = np.arange(1, k_max + 1, dtype=np.float64)
    partial = np.cumsum(np.abs(acvf.values[1: k_max + 1]) / k ** epsilon)
    grid = geometric_lag_grid(1, k_max)
    s_total = float(partial[-1])

    _, last = _decade_masks(grid)
    grid_s = partial[grid - 1]
    steps = np.diff(grid_s[last]) if last.sum() >= 2 else np.empty(0)
    denom = s_total if s_total > 0 else 1.0
    max_step = float(steps.max() / denom) if steps.size else 0.0
    decade_start_idx = int(np.argmax(last))
    rel_decade = float((s_total - grid_s[decade_start_idx]) / denom)

    tail = _verified_tail(acvf)
    tail_estimate: float | None
    if not np.abs(acvf.values[1: k_max + 1]).any():
        route, verdict, tail_estimate = "zero", "pass", 0.0
    elif tail.kind == "zero":
        route, verdict, tail_estimate = "certified-zero", "pass", 0.0
    elif tail.kind == "geometric":
        c, r = tail.const, tail.rate
        tail_estimate = (0.0 if r == 0.0 else
                         c * r ** (k_max + 1) / ((k_max + 1) ** epsilon * (1 - r)))
        route, verdict = "certified-geometric", "pass"
    elif tail.kind == "power":
        route = "certified-power"
        beta = tail.rate + epsilon
        if beta <= 1:
            tail_estimate = None  # integral comparison diverges
            verdict = "fail"
        else:
            tail_estimate = tail.const * k_max ** (1 - beta) / (beta - 1)
            verdict = "pass" if beta > 1 + POWER_MARGIN else "inconclusive"
    else:
        route = "threshold"
        tail_estimate = None
        verdict = "pass" if (steps.size and max_step < STEP_INCREMENT_REL) else "inconclusive"
    return SummabilitySection(
        epsilon=float(epsilon),
        partial_sums=list(zip(grid.tolist(), grid_s.tolist())),
        tail_estimate=tail_estimate,
        verdict=verdict,
        route=route,
        rel_decade_increment=rel_decade,
        max_rel_step_increment=max_step,
    )


def theorem_check(gw: AcvfSequence, gx: AcvfSequence, xi_lags,
                  epsilon: float = DEFAULT_EPSILON, k_min: int = DEFAULT_K_MIN,
                  k_max: int | None = None) -> ConditionReport:
    """Full pipeline: hypotheses on the input, both conditions on the output.

    Fits the geometric envelope on gw (raising NoGeometricEnvelopeError
    when that hypothesis fails), diagnoses both conditions on gx, forms
    the composed autocovariances, diagnoses them, and verifies the three
    one-sided partial-sum bounds at every requested lag.  theorem_ok is
    False only when the hypotheses all pass and a conclusion fails.
    """
    envelope = fit_exponential_bound(gw)
    gw_cert = gw.with_tail(Tail.geometric(envelope.C, envelope.r))

    if k_max is None:
        k_max = DEFAULT_K_MAX
    k_top = min(k_max, gx.k_max - _required_horizon(gw_cert, gx))
    if k_top < k_min:
        raise RangeError(
            f"input acvf too short: composition reaches lag {k_top} < {k_min}"
        )
    composed = compose_acvf(gw_cert, gx, k_top)
    gy = composed.acvf

    hyp_range = min(gx.k_max, k_top)
    input_berman = berman_diagnostic(gx, k_min, hyp_range)
    input_summability = summability_diagnostic(gx, epsilon, hyp_range)

    out_berman = berman_diagnostic(gy, k_min, k_top)
    out_summability = summability_diagnostic(gy, epsilon, k_top)

    checks = []
    for k in xi_lags:
        triple = xi_decomposition(gw_cert, gx, int(k))
        b1, b2, b3 = xi_bounds(envelope, gx, int(k))
        ok = (abs(triple.xi1) <= b1 and abs(triple.xi2) <= b2
              and abs(triple.xi3) <= b3)
        checks.append(XiCheck(int(k), triple.xi1, triple.xi2, triple.xi3,
                              b1, b2, b3, ok))

    hypothesis_ok = (input_berman.verdict == "pass"
                     and input_summability.verdict == "pass")
    conclusion_failed = (out_berman.verdict == "fail"
                         or out_summability.verdict == "fail"
                         or any(not c.ok for c in checks))
    return ConditionReport(
        berman=out_berman,
        summability=out_summability,
        xi_checks=tuple(checks),
        input_berman=input_berman,
        input_summability=input_summability,
        envelope=envelope,
        theorem_ok=not (hypothesis_ok and conclusion_failed),
    )


def _required_horizon(gw: AcvfSequence, gx: AcvfSequence) -> int:
    from .acvf import _geometric_tail_of, _horizon, _support_end

    c, r = _geometric_tail_of(gw, "theorem_check")
    h, _ = _horizon(c, r, gw.values[0], gx.values[0], _support_end(gw.values))
    return h
