# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernels; same contract as ``_kernels_py``."""

from fractions import Fraction

from libc.stdlib cimport malloc, free


cdef long long _powmod(long long a, long long e, long long p):
    cdef long long result = 1
    a %= p
    while e > 0:
        if e & 1:
            result = result * a % p
        a = a * a % p
        e >>= 1
    return result


def rref_q(rows, Py_ssize_t ncols, Py_ssize_t limit=-1):
    cdef Py_ssize_t nrows, r, c, i, j, piv, k
    cdef list prow, row, nz, out
    cdef object a, inv, f, x
    if limit < 0:
        limit = ncols
    out = [list(rw) for rw in rows]
    nrows = len(out)
    pivots = []
    r = 0
    for c in range(limit):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if (<list>out[i])[c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            out[r], out[piv] = out[piv], out[r]
        prow = <list>out[r]
        a = prow[c]
        if a != 1:
            if a == -1:
                inv = -1
            elif type(a) is int:
                inv = Fraction(1, a)
            else:
                inv = 1 / a
            for j in range(c, ncols):
                x = prow[j]
                if x:
                    x = x * inv
                    if type(x) is Fraction and x.denominator == 1:
                        x = x.numerator
                    prow[j] = x
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = <list>out[i]
            f = row[c]
            if not f:
                continue
            for k in range(len(nz)):
                j = nz[k]
                x = row[j] - f * prow[j]
                if type(x) is Fraction and x.denominator == 1:
                    x = x.numerator
                row[j] = x
        pivots.append(c)
        r += 1
    return out, pivots


def rref_p(rows, Py_ssize_t ncols, long long p, Py_ssize_t limit=-1):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t r, c, i, j, piv
    cdef long long a, inv, f, t
    cdef long long *m
    if limit < 0:
        limit = ncols
    if nrows == 0 or ncols == 0:
        return [[] for _ in range(nrows)], []
    m = <long long *> malloc(nrows * ncols * sizeof(long long))
    if m == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            rw = rows[i]
            for j in range(ncols):
                t = rw[j] % p
                m[i * ncols + j] = t
        pivots = []
        r = 0
        for c in range(limit):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if m[i * ncols + c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    t = m[r * ncols + j]
                    m[r * ncols + j] = m[piv * ncols + j]
                    m[piv * ncols + j] = t
            a = m[r * ncols + c]
            if a != 1:
                inv = _powmod(a, p - 2, p)
                for j in range(c, ncols):
                    m[r * ncols + j] = m[r * ncols + j] * inv % p
            for i in range(nrows):
                if i == r:
                    continue
                f = m[i * ncols + c]
                if f == 0:
                    continue
                for j in range(c, ncols):
                    t = m[r * ncols + j]
                    if t != 0:
                        m[i * ncols + j] = (m[i * ncols + j] - f * t) % p
                        if m[i * ncols + j] < 0:
                            m[i * ncols + j] += p
            pivots.append(c)
            r += 1
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(nrows)]
    finally:
        free(m)
    return out, pivots
