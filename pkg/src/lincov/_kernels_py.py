"""Pure-Python reference kernels.

These are the fallback implementations selected when the compiled
extension (``lincov._kernels``) is unavailable.  The compiled kernels
must reproduce these bit-for-bit: every accumulation below is ordered
(ascending tap / lag index) precisely so both backends perform the same
IEEE-754 operations in the same order.

The random stream is part of the package's external contract and is
fully specified here:

* 64-bit generator: xoshiro256++ (Blackman & Vigna), seeded by feeding
  the 64-bit seed through SplitMix64 four times to fill the state.
* uniforms: ``(x >> 11) * 2**-53`` giving doubles in ``[0, 1)``.
* standard normals: Marsaglia's polar method.  Pairs ``u = 2U1-1,
  v = 2U2-1`` are rejected while ``s = u*u + v*v >= 1`` or ``s == 0``;
  an accepted pair yields ``u*f, v*f`` with ``f = sqrt(-2 ln s / s)``,
  consumed in that order.  When an odd count is requested the second
  member of the final pair is discarded.
"""

import math

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF
_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
_U53 = 2.0 ** -53


def _splitmix64(state: int):
    state = (state + _SPLITMIX_GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def _seed_state(seed: int):
    s = []
    state = seed & _MASK64
    for _ in range(4):
        state, out = _splitmix64(state)
        s.append(out)
    return s


class _Xoshiro256pp:
    """Sequential xoshiro256++ stream over 64-bit integers."""

    def __init__(self, seed: int):
        self._s = _seed_state(seed)

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        x = (s0 + s3) & _MASK64
        result = ((((x << 23) | (x >> 41)) & _MASK64) + s0) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & _MASK64
        self._s = [s0, s1, s2, s3]
        return result

    def next_uniform(self) -> float:
        return (self.next_u64() >> 11) * _U53


def standard_normals(seed: int, count: int) -> np.ndarray:
    """First ``count`` values of the documented normal stream for ``seed``."""
    rng = _Xoshiro256pp(seed)
    out = np.empty(count)
    i = 0
    while i < count:
        u = 2.0 * rng.next_uniform() - 1.0
        v = 2.0 * rng.next_uniform() - 1.0
        s = u * u + v * v
        if s >= 1.0 or s == 0.0:
            continue
        f = math.sqrt(-2.0 * math.log(s) / s)
        out[i] = u * f
        i += 1
        if i < count:
            out[i] = v * f
            i += 1
    return out


def symmetric_uniforms(seed: int, count: int) -> np.ndarray:
    """First ``count`` values of ``2*U - 1`` over the documented stream."""
    rng = _Xoshiro256pp(seed)
    out = np.empty(count)
    for i in range(count):
        out[i] = 2.0 * rng.next_uniform() - 1.0
    return out


def direct_filter(taps: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Ordered direct FIR filter, valid mode.

    ``out[i] = sum_{n=0}^{N} taps[n] * x[i + N - n]`` accumulated in
    ascending ``n``; output length ``len(x) - N``.
    """
    taps = np.ascontiguousarray(taps, dtype=np.float64)
    x = np.ascontiguousarray(x, dtype=np.float64)
    n_taps = taps.shape[0]
    length = x.shape[0] - n_taps + 1
    if length <= 0:
        raise ValueError("series shorter than filter")
    out = np.zeros(length)
    for n in range(n_taps):
        out += taps[n] * x[n_taps - 1 - n:n_taps - 1 - n + length]
    return out


def arma_psi_recursion(phi: np.ndarray, theta: np.ndarray, n_max: int) -> np.ndarray:
    """Power-series coefficients of theta(z)/phi(z) by linear recursion.

    ``phi`` holds (phi_1..phi_p) for phi(z) = 1 - sum phi_i z^i and
    ``theta`` holds (theta_1..theta_q) for theta(z) = 1 + sum theta_j z^j.
    ``psi[n] = theta_n + sum_{i=1..min(p,n)} phi[i] * psi[n-i]``, inner
    sum in ascending ``i``.
    """
    p = len(phi)
    q = len(theta)
    psi = np.empty(n_max + 1)
    psi[0] = 1.0
    for n in range(1, n_max + 1):
        acc = theta[n - 1] if n <= q else 0.0
        for i in range(1, min(p, n) + 1):
            acc += phi[i - 1] * psi[n - i]
        psi[n] = acc
    return psi
