# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled best-cosine-match scan.

Fused normalize + dot + argmax per query row with O(1) extra memory beyond
the reference norms; ties resolve to the lowest reference index.
"""

import numpy as np

from libc.math cimport sqrt


def best_match_matrix(double[:, ::1] queries, double[:, ::1] refs):
    cdef Py_ssize_t nq = queries.shape[0]
    cdef Py_ssize_t nr = refs.shape[0]
    cdef Py_ssize_t d = queries.shape[1]
    cdef Py_ssize_t i, j, k

    idx_arr = np.zeros(nq, dtype=np.int64)
    score_arr = np.zeros(nq, dtype=np.float64)
    rnorm_arr = np.zeros(nr, dtype=np.float64)
    cdef long long[::1] idx = idx_arr
    cdef double[::1] score = score_arr
    cdef double[::1] rnorm = rnorm_arr

    cdef double acc, dot, cos, best, qnorm
    cdef Py_ssize_t best_j

    with nogil:
        for j in range(nr):
            acc = 0.0
            for k in range(d):
                acc += refs[j, k] * refs[j, k]
            rnorm[j] = sqrt(acc)

        for i in range(nq):
            acc = 0.0
            for k in range(d):
                acc += queries[i, k] * queries[i, k]
            qnorm = sqrt(acc)
            best = -2.0
            best_j = 0
            for j in range(nr):
                if qnorm == 0.0 or rnorm[j] == 0.0:
                    cos = 0.0
                else:
                    dot = 0.0
                    for k in range(d):
                        dot += queries[i, k] * refs[j, k]
                    cos = dot / (qnorm * rnorm[j])
                    if cos > 1.0:
                        cos = 1.0
                    elif cos < -1.0:
                        cos = -1.0
                if cos > best:
                    best = cos
                    best_j = j
            idx[i] = best_j
            score[i] = best

    return idx_arr, score_arr
