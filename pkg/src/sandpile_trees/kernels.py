"""Backend selection for the toppling and burning loops.

The compiled extension is used when it imports and ``SANDPILE_PURE_PYTHON``
is unset.  Inputs whose grain total could overflow int64 always take the
pure-Python path.
"""
from __future__ import annotations

import os
from array import array

from . import _pykernels

try:
    if os.environ.get("SANDPILE_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_INT64_SAFE = 1 << 62


def available_backends() -> list[str]:
    return ["cython", "python"] if _compiled is not None else ["python"]


def _resolve(backend):
    backend = backend or BACKEND
    if backend not in ("cython", "python"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "cython" and _compiled is None:
        raise RuntimeError("compiled kernels are not built")
    return backend


def stabilize_fifo(g, heights, backend=None):
    """Topple ``heights`` on ``g`` to stability; returns ``(stable, odometer)`` lists."""
    if _resolve(backend) == "cython" and sum(heights) < _INT64_SAFE:
        indptr, indices, weights, degree, _ = g.packed
        h = array("q", heights)
        odo = array("q", bytes(8 * len(h)))
        _compiled.stabilize_fifo(indptr, indices, weights, degree, h, odo)
        return h.tolist(), odo.tolist()
    indptr, indices, weights = g.csr
    h = list(heights)
    odo = [0] * len(h)
    _pykernels.stabilize_fifo(indptr, indices, weights, g.degrees, h, odo)
    return h, odo


def burn(g, heights, backend=None) -> bool:
    """Burning test on a stable configuration: True iff every vertex burns."""
    if _resolve(backend) == "cython" and max(heights, default=0) < _INT64_SAFE:
        return bool(_compiled.burn(*g.packed, array("q", heights)))
    indptr, indices, weights = g.csr
    return _pykernels.burn(indptr, indices, weights, g.degrees, g.sink_multiplicity, heights)
