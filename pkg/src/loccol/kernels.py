"""Backend selection for the search kernels.

The compiled extension is used when importable; ``LOCCOL_PURE_PYTHON=1``
forces the pure-Python fallback.
"""
import os

from . import _pykernels

if os.environ.get("LOCCOL_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"
FOUND, EXHAUSTED, BUDGET = _pykernels.FOUND, _pykernels.EXHAUSTED, _pykernels.BUDGET

search = _impl.search
brute_force = _impl.brute_force


def backends():
    """All importable backends, keyed by name (the benchmark and tests use both)."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
