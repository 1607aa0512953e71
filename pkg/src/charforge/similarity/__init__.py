"""Best-cosine-match kernel with a compiled core and a numpy fallback.

Both backends implement ``best_match_matrix(queries, refs) -> (idx, score)``
with identical semantics: cosine of zero vectors is 0, ties go to the lowest
reference index. The compiled core runs a fixed summation order, so scores
are bit-stable across BLAS builds and thread counts; the numpy backend is
faster on large dense batches. Set CHARFORGE_SIMILARITY=numpy|cython to
override the default (compiled when built).
"""

from __future__ import annotations

import os

import numpy as np

try:
    from charforge._simcore import best_match_matrix as _core_best_match
except ImportError:  # extension not built
    _core_best_match = None

from .fallback import best_match_matrix as _numpy_best_match

_FORCED = os.environ.get("CHARFORGE_SIMILARITY", "")
if _FORCED == "numpy" or (_core_best_match is None and _FORCED != "cython"):
    BACKEND = "numpy"
elif _core_best_match is not None:
    BACKEND = "cython"
else:
    raise ImportError("CHARFORGE_SIMILARITY=cython but the extension is not built")


def _as_matrix(a) -> np.ndarray:
    m = np.ascontiguousarray(a, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {m.shape}")
    return m


def best_match_matrix(queries, refs) -> tuple[np.ndarray, np.ndarray]:
    """Per query row: index and cosine of the best-matching reference row."""
    q = _as_matrix(queries)
    r = _as_matrix(refs)
    if r.shape[0] == 0:
        raise ValueError("no reference vectors")
    if q.shape[1] != r.shape[1]:
        raise ValueError(f"dimension mismatch: {q.shape[1]} vs {r.shape[1]}")
    if BACKEND == "cython":
        return _core_best_match(q, r)
    return _numpy_best_match(q, r)


def backend_name() -> str:
    return BACKEND
