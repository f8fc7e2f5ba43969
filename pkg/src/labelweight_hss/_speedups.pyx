# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled codeword enumeration kernel.

Same contract as _purepy.min_labelweight: walk every message vector in
base-q counter order, one scaled-row addition per tree level, and take
the minimum label count over nonzero codewords (zero words are skipped;
the sentinel s + 1 means the span was trivial).  Restricted to s <= 64
labels so a codeword's touched-label set fits one 64-bit mask.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy


cdef inline int _popcount(unsigned long long x):
    cdef int n = 0
    while x:
        x &= x - 1
        n += 1
    return n


def min_labelweight(const unsigned char[::1] rows, int nrows, int ncols,
                    const unsigned char[::1] labels0,
                    const unsigned char[::1] add, const unsigned char[::1] mul,
                    int q, int s):
    if nrows < 1:
        raise ValueError("generator needs at least one row")
    if s > 64:
        raise ValueError("compiled kernel supports at most 64 labels")
    if rows.shape[0] != nrows * ncols:
        raise ValueError("row buffer size mismatch")
    if labels0.shape[0] != ncols:
        raise ValueError("label buffer size mismatch")
    if add.shape[0] != q * q or mul.shape[0] != q * q:
        raise ValueError("field table size mismatch")

    cdef unsigned char *scaled = <unsigned char *> malloc(nrows * q * ncols)
    cdef unsigned char *acc = <unsigned char *> malloc((nrows + 1) * ncols)
    cdef int *digit = <int *> malloc(nrows * sizeof(int))
    cdef unsigned long long *bit = <unsigned long long *> malloc(ncols * sizeof(unsigned long long))
    if scaled == NULL or acc == NULL or digit == NULL or bit == NULL:
        free(scaled); free(acc); free(digit); free(bit)
        raise MemoryError()

    cdef int i, j, c, level, weight
    cdef int best = s + 1
    cdef unsigned long long mask
    cdef const unsigned char *srow
    cdef unsigned char *src
    cdef unsigned char *dst

    try:
        for i in range(nrows):
            for c in range(q):
                for j in range(ncols):
                    scaled[(i * q + c) * ncols + j] = mul[c * q + rows[i * ncols + j]]
        for j in range(ncols):
            bit[j] = (<unsigned long long> 1) << labels0[j]
        for j in range(ncols):
            acc[j] = 0

        level = 0
        digit[0] = -1
        while level >= 0:
            digit[level] += 1
            c = digit[level]
            if c == q:
                level -= 1
                continue
            src = acc + level * ncols
            dst = acc + (level + 1) * ncols
            if c == 0:
                memcpy(dst, src, ncols)
            else:
                srow = scaled + (level * q + c) * ncols
                for j in range(ncols):
                    dst[j] = add[src[j] * q + srow[j]]
            if level == nrows - 1:
                mask = 0
                for j in range(ncols):
                    if dst[j]:
                        mask |= bit[j]
                if mask:
                    weight = _popcount(mask)
                    if weight < best:
                        best = weight
                        if best == 1:
                            break
            else:
                level += 1
                digit[level] = -1
    finally:
        free(scaled)
        free(acc)
        free(digit)
        free(bit)
    return best
