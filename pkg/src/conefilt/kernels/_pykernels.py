"""Pure-Python integer kernels for the exact pivoting hot loops.

Everything here operates on plain Python ints (arbitrary precision), so
results are bit-identical to the compiled twin in ``_ckernels.pyx``.  The
test suite runs both backends against each other on random inputs.

All simplex-side kernels follow the integer-pivoting (Edmonds) convention:
a matrix is stored as integer entries together with a positive integer
denominator ``den``, the represented matrix being ``entries / den``.  Pivot
steps use the two-term cross-multiplication update whose division by the
previous denominator is exact (the entries are minors of an integer
matrix, by Cramer's rule).
"""

from __future__ import annotations


def dot_int(a, b):
    """Exact dot product of two equal-length int sequences."""
    s = 0
    for x, y in zip(a, b):
        s += x * y
    return s


def matvec_int(rows, v, ncols):
    """rows[:, :ncols] @ v for a list-of-lists of ints.

    Rows may be wider than ``ncols`` (augmented tableaus); trailing entries
    are ignored.
    """
    out = []
    for row in rows:
        s = 0
        for j in range(ncols):
            s += row[j] * v[j]
        out.append(s)
    return out


def scan_entering(cols, pi):
    """Index of the first column with pi . col > 0, or -1.

    This is the Bland pricing scan of the phase-1 simplex: column order is
    variable order, so returning the first match implements the smallest
    index rule.
    """
    for j, col in enumerate(cols):
        s = 0
        for x, y in zip(pi, col):
            s += x * y
        if s > 0:
            return j
    return -1


def pivot_update(rows, u, r, den):
    """Integer pivot of ``rows`` (in place) against column ``u`` at row ``r``.

    ``rows / den`` is the current matrix, ``u / den`` the entering column in
    the current basis; ``u[r]`` must be positive.  Row ``r`` is left as is
    (its rescaling is absorbed by the returned denominator ``u[r]``).
    """
    piv = u[r]
    row_r = rows[r]
    for i, row in enumerate(rows):
        if i == r:
            continue
        ui = u[i]
        for j in range(len(row)):
            row[j] = (piv * row[j] - ui * row_r[j]) // den
    return piv


def ffgj(rows, pivot_width):
    """Fraction-free Gauss-Jordan elimination, in place.

    Pivots are searched in columns ``0..pivot_width-1`` only; rows may be
    wider (augmented right-hand sides are carried along).  On return,
    ``rows / den`` is the reduced row echelon form and every pivot entry
    equals ``den``.  Returns ``(pivot_columns, den)``; ``den`` is nonzero
    but may be negative.
    """
    den = 1
    piv_cols = []
    nrows = len(rows)
    r = 0
    for c in range(pivot_width):
        p = -1
        for i in range(r, nrows):
            if rows[i][c] != 0:
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
            for j in range(len(row)):
                row[j] = (piv * row[j] - f * row_r[j]) // den
        den = piv
        piv_cols.append(c)
        r += 1
        if r == nrows:
            break
    return piv_cols, den
