"""Gaussian elimination over any exact field-like coefficient type.

Entries only need +, -, *, ``inverse()`` and ``is_zero()``.  Pivoting is
first nonzero in column order, so results are deterministic.
"""

from __future__ import annotations


def _clone(mat):
    return [list(row) for row in mat]


def row_echelon(mat, zero):
    """Reduced row echelon form.  Returns (rref, pivot column list)."""
    m = _clone(mat)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if not m[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def matrix_rank(mat, zero):
    return len(row_echelon(mat, zero)[1])


def solve(mat, rhs, zero):
    """One solution of mat * x = rhs, or None if inconsistent.

    Free variables are set to zero, so the result is deterministic.
    """
    if not mat:
        return [] if all(b.is_zero() for b in rhs) else None
    ncols = len(mat[0])
    aug = [list(row) + [b] for row, b in zip(mat, rhs)]
    red, pivots = row_echelon(aug, zero)
    if ncols in pivots:
        return None  # pivot in the constants column
    x = [zero] * ncols
    for r, c in enumerate(pivots):
        x[c] = red[r][ncols]
    return x


def kernel(mat, zero, one):
    """Basis of the right kernel, one vector per free column."""
    if not mat:
        return []
    ncols = len(mat[0])
    red, pivots = row_echelon(mat, zero)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = zero - red[r][fc]
        out.append(v)
    return out
