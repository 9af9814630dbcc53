"""Numeric kernel dispatch: compiled extension when available, else pure Python.

Set ``MDST_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("MDST_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

BIG = _pykernels.BIG
floyd_warshall = _impl.floyd_warshall
boundary_value = _impl.boundary_value
edge_scan = _impl.edge_scan


def backends():
    """Mapping of available backend name -> module, for tests and benchmarks."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
