"""Numpy best-cosine-match backend.

Queries are processed in blocks so the score matrix never exceeds roughly
128 MB regardless of corpus size.
"""

from __future__ import annotations

import numpy as np

_MAX_BLOCK_CELLS = 16_000_000


def _normalize(m: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(m, axis=1, keepdims=True)
    return np.divide(m, norms, out=np.zeros_like(m), where=norms > 0)


def best_match_matrix(queries: np.ndarray, refs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    qn = _normalize(queries)
    rn = _normalize(refs).T
    n = qn.shape[0]
    idx = np.zeros(n, dtype=np.int64)
    best = np.zeros(n, dtype=np.float64)
    block = max(1, _MAX_BLOCK_CELLS // max(1, refs.shape[0]))
    for start in range(0, n, block):
        scores = qn[start:start + block] @ rn
        np.clip(scores, -1.0, 1.0, out=scores)
        # argmax takes the first maximum: lowest reference index wins ties
        rows = scores.argmax(axis=1)
        idx[start:start + block] = rows
        best[start:start + block] = scores[np.arange(scores.shape[0]), rows]
    return idx, best
