# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled configuration scoring kernels (see ``_pykernel`` for semantics)."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


def enumerate_range(pred_ptr, pred_idx, sup_ptr, dur, bel, radix_pos,
                    long long lo, long long hi, long long offset, Py_ssize_t span):
    cdef int64_t[::1] pp = np.ascontiguousarray(pred_ptr, dtype=np.int64)
    cdef int64_t[::1] pi = np.ascontiguousarray(pred_idx, dtype=np.int64)
    cdef int64_t[::1] sp = np.ascontiguousarray(sup_ptr, dtype=np.int64)
    cdef int64_t[::1] du = np.ascontiguousarray(dur, dtype=np.int64)
    cdef int64_t[::1] be = np.ascontiguousarray(bel, dtype=np.int64)
    cdef int64_t[::1] rp = np.ascontiguousarray(radix_pos, dtype=np.int64)
    cdef Py_ssize_t n = sp.shape[0] - 1
    out_arr = np.zeros(span, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    if lo >= hi or n == 0:
        return out_arr.tolist()

    sizes_arr = np.empty(n, dtype=np.int64)
    digit_arr = np.zeros(n, dtype=np.int64)
    ef_arr = np.zeros(n, dtype=np.int64)
    pmin_arr = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] sizes = sizes_arr
    cdef int64_t[::1] digit = digit_arr
    cdef int64_t[::1] ef = ef_arr
    cdef int64_t[::1] pmin = pmin_arr

    cdef Py_ssize_t i, j, e, p, dirty, last = n - 1
    cdef int64_t s, v, b, c, slot
    cdef long long rem = lo, k = lo

    for j in range(n):
        sizes[j] = sp[rp[j] + 1] - sp[rp[j]]
    for j in range(n - 1, -1, -1):
        digit[rp[j]] = rem % sizes[j]
        rem = rem // sizes[j]

    dirty = 0
    with nogil:
        while True:
            for i in range(dirty, n):
                s = 0
                for e in range(pp[i], pp[i + 1]):
                    v = ef[pi[e]]
                    if v > s:
                        s = v
                c = sp[i] + digit[i]
                ef[i] = s + du[c]
                b = be[c]
                if i > 0 and pmin[i - 1] < b:
                    b = pmin[i - 1]
                pmin[i] = b
            slot = ef[last] - offset
            if pmin[last] > out[slot]:
                out[slot] = pmin[last]
            k += 1
            if k >= hi:
                break
            dirty = n
            j = n - 1
            while True:
                p = rp[j]
                if p < dirty:
                    dirty = p
                digit[p] += 1
                if digit[p] < sizes[j]:
                    break
                digit[p] = 0
                j -= 1
    return out_arr.tolist()


def score_choices(pred_ptr, pred_idx, sup_ptr, dur, bel, radix_pos,
                  choices, long long offset, Py_ssize_t span):
    cdef int64_t[::1] pp = np.ascontiguousarray(pred_ptr, dtype=np.int64)
    cdef int64_t[::1] pi = np.ascontiguousarray(pred_idx, dtype=np.int64)
    cdef int64_t[::1] sp = np.ascontiguousarray(sup_ptr, dtype=np.int64)
    cdef int64_t[::1] du = np.ascontiguousarray(dur, dtype=np.int64)
    cdef int64_t[::1] be = np.ascontiguousarray(bel, dtype=np.int64)
    cdef int64_t[::1] rp = np.ascontiguousarray(radix_pos, dtype=np.int64)
    cdef Py_ssize_t n = sp.shape[0] - 1
    ch_arr = np.ascontiguousarray(choices, dtype=np.int64).reshape(-1, n)
    cdef int64_t[:, ::1] ch = ch_arr
    out_arr = np.zeros(span, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    digit_arr = np.zeros(n, dtype=np.int64)
    ef_arr = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] digit = digit_arr
    cdef int64_t[::1] ef = ef_arr
    cdef Py_ssize_t r, i, j, e
    cdef int64_t s, v, c, bmin, slot

    with nogil:
        for r in range(ch.shape[0]):
            for j in range(n):
                digit[rp[j]] = ch[r, j]
            bmin = -1
            for i in range(n):
                s = 0
                for e in range(pp[i], pp[i + 1]):
                    v = ef[pi[e]]
                    if v > s:
                        s = v
                c = sp[i] + digit[i]
                ef[i] = s + du[c]
                if bmin < 0 or be[c] < bmin:
                    bmin = be[c]
            slot = ef[n - 1] - offset
            if bmin > out[slot]:
                out[slot] = bmin
    return out_arr.tolist()
