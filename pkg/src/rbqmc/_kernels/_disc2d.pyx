# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled corner sweep for 2-d exact star discrepancy.

Mirror of fallback.corner_max_2d: identical contract, identical result.
The active-y array is kept sorted with binary-search insertion (memmove),
and each column's open/closed counts come from a merged pass of the active
array against the y-candidate list, so the whole sweep is O(n^2).
"""

from libc.string cimport memmove

import numpy as np


cdef inline Py_ssize_t _insert(long long* buf, Py_ssize_t size, long long val) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = size, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if buf[mid] <= val:
            lo = mid + 1
        else:
            hi = mid
    if size > lo:
        memmove(buf + lo + 1, buf + lo, (size - lo) * sizeof(long long))
    buf[lo] = val
    return size + 1


def corner_max_2d(ax_in, ay_in, dx, dy):
    ax_arr = np.ascontiguousarray(ax_in, dtype=np.int64)
    ay_arr = np.ascontiguousarray(ay_in, dtype=np.int64)
    xs_arr = np.unique(np.append(ax_arr, np.int64(dx)))
    ys_arr = np.unique(np.append(ay_arr, np.int64(dy)))
    order = np.argsort(ax_arr, kind="stable")
    sax_arr = np.ascontiguousarray(ax_arr[order])
    say_arr = np.ascontiguousarray(ay_arr[order])
    active_arr = np.empty(ax_arr.shape[0] + 1, dtype=np.int64)

    cdef long long[::1] sax = sax_arr
    cdef long long[::1] say = say_arr
    cdef long long[::1] xs = xs_arr
    cdef long long[::1] ys = ys_arr
    cdef long long[::1] active = active_arr
    cdef Py_ssize_t n = sax.shape[0], m = ys.shape[0], nx = xs.shape[0]
    cdef long long prod = <long long> dx * <long long> dy
    cdef long long nll = <long long> n
    cdef long long best = 0, v, nxc, xc
    cdef Py_ssize_t p = 0, size = 0, i, j, c
    cdef long long* buf = &active[0]

    with nogil:
        for c in range(nx):
            xc = xs[c]
            nxc = nll * xc
            while p < n and sax[p] < xc:
                size = _insert(buf, size, say[p])
                p += 1
            i = 0
            for j in range(m):
                while i < size and buf[i] < ys[j]:
                    i += 1
                v = nxc * ys[j] - (<long long> i) * prod
                if v > best:
                    best = v
            while p < n and sax[p] == xc:
                size = _insert(buf, size, say[p])
                p += 1
            i = 0
            for j in range(m):
                while i < size and buf[i] <= ys[j]:
                    i += 1
                v = (<long long> i) * prod - nxc * ys[j]
                if v > best:
                    best = v
    return int(best)
