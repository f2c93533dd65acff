# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: random stream, direct FIR filter, psi recursion.

Semantics are defined by ``lincov._kernels_py`` (the pure-Python
reference); this module must stay bit-for-bit identical to it.  All
accumulations run in the same ascending order, and the build disables
FP contraction so mul+add sequences round exactly like the fallback.
"""

from libc.math cimport log, sqrt
from libc.stdint cimport uint64_t

import numpy as np

cdef uint64_t _SPLITMIX_GAMMA = 0x9E3779B97F4A7C15ULL
cdef double _U53 = 2.0 ** -53


cdef inline uint64_t _rotl(uint64_t x, int k) nogil:
    return (x << k) | (x >> (64 - k))


cdef struct XoState:
    uint64_t s0, s1, s2, s3


cdef inline uint64_t _splitmix64(uint64_t *state) nogil:
    cdef uint64_t z
    state[0] = state[0] + _SPLITMIX_GAMMA
    z = state[0]
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline void _seed_state(XoState *st, uint64_t seed) nogil:
    cdef uint64_t sm = seed
    st.s0 = _splitmix64(&sm)
    st.s1 = _splitmix64(&sm)
    st.s2 = _splitmix64(&sm)
    st.s3 = _splitmix64(&sm)


cdef inline uint64_t _next_u64(XoState *st) nogil:
    cdef uint64_t result = _rotl(st.s0 + st.s3, 23) + st.s0
    cdef uint64_t t = st.s1 << 17
    st.s2 ^= st.s0
    st.s3 ^= st.s1
    st.s1 ^= st.s2
    st.s0 ^= st.s3
    st.s2 ^= t
    st.s3 = _rotl(st.s3, 45)
    return result


cdef inline double _next_uniform(XoState *st) nogil:
    return <double>(_next_u64(st) >> 11) * _U53


def standard_normals(seed, int count):
    """First ``count`` values of the documented normal stream for ``seed``."""
    cdef XoState st
    _seed_state(&st, <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF))
    out_arr = np.empty(count)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i = 0
    cdef double u, v, s, f
    with nogil:
        while i < count:
            u = 2.0 * _next_uniform(&st) - 1.0
            v = 2.0 * _next_uniform(&st) - 1.0
            s = u * u + v * v
            if s >= 1.0 or s == 0.0:
                continue
            f = sqrt(-2.0 * log(s) / s)
            out[i] = u * f
            i += 1
            if i < count:
                out[i] = v * f
                i += 1
    return out_arr


def symmetric_uniforms(seed, int count):
    """First ``count`` values of ``2*U - 1`` over the documented stream."""
    cdef XoState st
    _seed_state(&st, <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF))
    out_arr = np.empty(count)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    with nogil:
        for i in range(count):
            out[i] = 2.0 * _next_uniform(&st) - 1.0
    return out_arr


def direct_filter(taps, x):
    """Ordered direct FIR filter, valid mode (see the fallback docstring)."""
    taps_arr = np.ascontiguousarray(taps, dtype=np.float64)
    x_arr = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] t = taps_arr
    cdef const double[::1] xv = x_arr
    cdef Py_ssize_t n_taps = t.shape[0]
    cdef Py_ssize_t length = xv.shape[0] - n_taps + 1
    if length <= 0:
        raise ValueError("series shorter than filter")
    out_arr = np.empty(length)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, n
    cdef double acc
    with nogil:
        for i in range(length):
            acc = 0.0
            for n in range(n_taps):
                acc = acc + t[n] * xv[i + n_taps - 1 - n]
            out[i] = acc
    return out_arr


def arma_psi_recursion(phi, theta, int n_max):
    """theta(z)/phi(z) power-series coefficients by linear recursion."""
    phi_arr = np.ascontiguousarray(phi, dtype=np.float64)
    theta_arr = np.ascontiguousarray(theta, dtype=np.float64)
    cdef const double[::1] ph = phi_arr
    cdef const double[::1] th = theta_arr
    cdef Py_ssize_t p = ph.shape[0]
    cdef Py_ssize_t q = th.shape[0]
    psi_arr = np.empty(n_max + 1)
    cdef double[::1] psi = psi_arr
    cdef Py_ssize_t n, i, imax
    cdef double acc
    psi[0] = 1.0
    for n in range(1, n_max + 1):
        acc = th[n - 1] if n <= q else 0.0
        imax = p if p < n else n
        for i in range(1, imax + 1):
            acc = acc + ph[i - 1] * psi[n - i]
        psi[n] = acc
    return psi_arr
