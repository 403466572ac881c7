"""Generic exact linear algebra over a field.

Works with any coefficient type supporting +, -, *, /, == 0 comparison and
bool-able inequality with 0 (fractions.Fraction, Cyclotomic).  Row vectors
are lists/tuples; nothing here mutates its inputs.
"""

from fractions import Fraction


def _is_zero(x):
    return x == 0


def rref(rows):
    """Reduced row echelon form.  Returns (new_rows, pivot_columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        pivot = None
        for i in range(r, len(m)):
            if not _is_zero(m[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def solve(matrix_rows, rhs):
    """One solution x of M x = rhs, or None if inconsistent.

    Free variables are set to zero, which makes the output deterministic.
    """
    m = [list(r) + [b] for r, b in zip(matrix_rows, rhs)]
    if not m:
        return ()
    ncols = len(matrix_rows[0])
    red, pivots = rref(m)
    for row in red:
        if all(_is_zero(x) for x in row[:ncols]) and not _is_zero(row[ncols]):
            return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        if c == ncols:
            return None
        x[c] = red[r][ncols]
    return tuple(x)


def solve_unique(matrix_rows, rhs):
    """The solution of M x = rhs if it exists and is unique, else None."""
    if not matrix_rows:
        return None
    ncols = len(matrix_rows[0])
    x = solve(matrix_rows, rhs)
    if x is None:
        return None
    if rank(matrix_rows) != ncols:
        return None
    return x


def in_span(vectors, target) -> bool:
    """Is target a linear combination of the given vectors (over the field)?"""
    vecs = [list(v) for v in vectors]
    if all(_is_zero(x) for x in target):
        return True
    if not vecs:
        return False
    base = rank(vecs)
    return rank(vecs + [list(target)]) == base


def determinant(rows):
    """Exact determinant by Gaussian elimination (field coefficients)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return Fraction(1)
    assert all(len(r) == n for r in m)
    det = None
    sign = 1
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if not _is_zero(m[i][c]):
                pivot = i
                break
        if pivot is None:
            first = m[0][0]
            return first - first  # a zero of the right coefficient type
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        det = m[c][c] if det is None else det * m[c][c]
        inv = m[c][c]
        for i in range(c + 1, n):
            if not _is_zero(m[i][c]):
                f = m[i][c] / inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det if sign == 1 else -det
