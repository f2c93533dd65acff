"""Shared helpers: random stable/invertible model generation."""

import numpy as np
from hypothesis import strategies as st

from lincov.models import ArmaModel


def _poly_outside_disk(rng, degree, lo=1.2, hi=4.0):
    """Real polynomial with p(0) = 1 and all roots of modulus in [lo, hi]."""
    coeffs = np.array([1.0])
    remaining = degree
    while remaining:
        if remaining >= 2 and rng.random() < 0.5:
            m = rng.uniform(lo, hi)
            ang = rng.uniform(0.15, np.pi - 0.15)
            factor = np.array([1.0, -2.0 * np.cos(ang) / m, 1.0 / m**2])
            remaining -= 2
        else:
            m = rng.uniform(lo, hi) * rng.choice([-1.0, 1.0])
            factor = np.array([1.0, -1.0 / m])
            remaining -= 1
        coeffs = np.convolve(coeffs, factor)
    return coeffs


def random_stable_arma(rng, p_max=3, q_max=3):
    """Random ARMA model, stationary and invertible by construction."""
    p = int(rng.integers(0, p_max + 1))
    q = int(rng.integers(0, q_max + 1))
    ar_poly = _poly_outside_disk(rng, p)
    ma_poly = _poly_outside_disk(rng, q)
    sigma2 = float(rng.uniform(0.5, 2.0))
    return ArmaModel(tuple(-ar_poly[1:]), tuple(ma_poly[1:]), sigma2)


def stable_arma_strategy(p_max=3, q_max=3):
    """Hypothesis strategy over the same generator, shrinkable by seed."""
    return st.integers(0, 2**32 - 1).map(
        lambda seed: random_stable_arma(np.random.default_rng(seed), p_max, q_max)
    )
