#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs each hot kernel on both backends, checks the outputs are
bit-identical, and prints timings with the speedup.  The compiled
extension is optional; if it is not built this script reports fallback
timings only.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

import numpy as np

from lincov import _kernels_py

try:
    from lincov import _kernels
except ImportError:
    _kernels = None


def _time(fn, *args, repeat=3):
    best = np.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def _row(name, py_time, c_time, identical):
    if c_time is None:
        print(f"{name:28s} python {py_time * 1e3:9.2f} ms   compiled      -")
        return
    mark = "bit-identical" if identical else "MISMATCH"
    print(f"{name:28s} python {py_time * 1e3:9.2f} ms   compiled "
          f"{c_time * 1e3:9.2f} ms   x{py_time / c_time:7.1f}   {mark}")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true",
                        help="smaller sizes for a fast sanity run")
    args = parser.parse_args()
    scale = 10 if args.quick else 1

    n_normals = 2_000_000 // scale
    n_series = 1_000_000 // scale
    taps = np.ascontiguousarray(0.99 ** np.arange(512))
    n_psi = 100_000 // scale
    phi = np.array([1.5, -0.56, 0.01])
    theta = np.array([0.4, 0.2, -0.1])

    if _kernels is None:
        print("compiled kernels not built; showing fallback timings only\n")

    cases = [
        (f"normals ({n_normals:,})",
         lambda mod: (mod.standard_normals, (42, n_normals))),
        (f"uniforms ({n_normals:,})",
         lambda mod: (mod.symmetric_uniforms, (7, n_normals))),
        (f"fir 512 taps ({n_series:,})",
         lambda mod: (mod.direct_filter, (taps, _noise(n_series + 511)))),
        (f"psi recursion ({n_psi:,})",
         lambda mod: (mod.arma_psi_recursion, (phi, theta, n_psi))),
    ]

    for name, make in cases:
        fn_py, args_py = make(_kernels_py)
        py_time, out_py = _time(fn_py, *args_py)
        if _kernels is None:
            _row(name, py_time, None, False)
            continue
        fn_c, args_c = make(_kernels)
        c_time, out_c = _time(fn_c, *args_c)
        _row(name, py_time, c_time, np.array_equal(out_py, out_c))


_noise_cache = {}


def _noise(count):
    if count not in _noise_cache:
        if _kernels is not None:
            _noise_cache[count] = _kernels.standard_normals(1, count)
        else:
            _noise_cache[count] = _kernels_py.standard_normals(1, count)
    return _noise_cache[count]


if __name__ == "__main__":
    main()
