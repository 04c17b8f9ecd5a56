# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_pykernels``.

The arithmetic stays on Python ints (entries are arbitrary-precision), so
the speedup comes from removing interpreter overhead in the inner loops,
not from machine word arithmetic.  Semantics must match ``_pykernels``
exactly; see that module for the conventions.
"""


def dot_int(list a, list b):
    cdef Py_ssize_t i, n = len(a)
    s = 0
    for i in range(n):
        s = s + a[i] * b[i]
    return s


def matvec_int(list rows, list v, Py_ssize_t ncols):
    cdef Py_ssize_t i, j, nrows = len(rows)
    cdef list out = []
    cdef list row
    for i in range(nrows):
        row = rows[i]
        s = 0
        for j in range(ncols):
            s = s + row[j] * v[j]
        out.append(s)
    return out


def scan_entering(list cols, list pi):
    cdef Py_ssize_t j, i, ncols = len(cols), m = len(pi)
    cdef list col
    for j in range(ncols):
        col = cols[j]
        s = 0
        for i in range(m):
            s = s + pi[i] * col[i]
        if s > 0:
            return j
    return -1


def pivot_update(list rows, list u, Py_ssize_t r, den):
    cdef Py_ssize_t i, j, nrows = len(rows), width
    cdef list row, row_r = rows[r]
    piv = u[r]
    for i in range(nrows):
        if i == r:
            continue
        row = rows[i]
        ui = u[i]
        width = len(row)
        for j in range(width):
            row[j] = (piv * row[j] - ui * row_r[j]) // den
    return piv


def ffgj(list rows, Py_ssize_t pivot_width):
    cdef Py_ssize_t c, i, j, p, r = 0, nrows = len(rows), width
    cdef list piv_cols = [], row, row_r
    den = 1
    for c in range(pivot_width):
        p = -1
        for i in range(r, nrows):
            if (<list>rows[i])[c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        row_r = rows[r]
        piv = row_r[c]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            width = len(row)
            for j in range(width):
                row[j] = (piv * row[j] - f * row_r[j]) // den
        den = piv
        piv_cols.append(c)
        r += 1
        if r == nrows:
            break
    return piv_cols, den
