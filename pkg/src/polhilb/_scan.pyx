# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled (k, j, h) decomposition scan; see _scan_py for the formulas.

All arithmetic is on signed 64-bit integers (Python semantics for % and //,
since cdivision is off). Callers must check that the
window fits (``_kernels.fits_int64``) before calling.
"""
from libc.stdint cimport int64_t


def scan_window(t, a, b, k_lo, k_hi):
    cdef int64_t ct = t, ca = a, cb = b, lo = k_lo, hi = k_hi
    cdef int64_t k, j, h, e, ynum, y, znum, z, m, zk, yk
    cdef int64_t tb2 = ct * cb * cb
    cdef int64_t a2 = ca * ca
    cdef int64_t two_a = 2 * ca
    cdef int64_t za = 2 * a2 + 1
    hits = []
    k = lo
    while k <= hi:
        zk = 4 * ct * tb2 * k
        yk = 4 * ct * k
        for j in range(3):
            m = -ct * k + j
            for h in range(1, 12):
                e = h - 2 * j
                ynum = cb * (yk - e)
                if ynum % two_a != 0:
                    continue
                y = ynum // two_a
                if (k - y) % 2 != 0:
                    continue
                znum = zk - za * e
                if znum % a2 != 0:
                    continue
                z = znum // a2
                if (m - z) % 10 != 0:
                    continue
                hits.append((k, j, h, (k - y) // 2, y, z, (m - z) // 10))
        k += 1
    return hits
