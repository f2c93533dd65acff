"""Kernel backend selection.

The compiled extension is preferred when present; the pure-Python
reference implementation is the fallback.  Both produce bit-identical
results (enforced by tests), so the choice only affects speed.  Set
``LINCOV_BACKEND=python`` to force the fallback, e.g. for benchmarking.
"""

import os

from . import _kernels_py

_FORCED = os.environ.get("LINCOV_BACKEND", "").strip().lower()

if _FORCED not in ("", "python", "compiled"):
    raise RuntimeError(f"LINCOV_BACKEND must be 'python' or 'compiled', got {_FORCED!r}")

_compiled = None
if _FORCED != "python":
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None
        if _FORCED == "compiled":
            raise RuntimeError("LINCOV_BACKEND=compiled but lincov._kernels is not built")

if _compiled is not None:
    BACKEND = "compiled"
    standard_normals = _compiled.standard_normals
    symmetric_uniforms = _compiled.symmetric_uniforms
    direct_filter = _compiled.direct_filter
    arma_psi_recursion = _compiled.arma_psi_recursion
else:
    BACKEND = "python"
    standard_normals = _kernels_py.standard_normals
    symmetric_uniforms = _kernels_py.symmetric_uniforms
    direct_filter = _kernels_py.direct_filter
    arma_psi_recursion = _kernels_py.arma_psi_recursion


def backend_name() -> str:
    """Name of the kernel backend in use ('compiled' or 'python')."""
    return BACKEND
