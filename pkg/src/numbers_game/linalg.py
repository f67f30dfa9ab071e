"""Small exact linear algebra over Fractions (Gaussian elimination)."""

from fractions import Fraction


def _copy(matrix):
    return [[Fraction(x) for x in row] for row in matrix]


def leading_minors(matrix) -> list:
    """Leading principal minors d_1..d_n, computed by fraction-exact elimination.

    Elimination without pivoting stays valid while the running minors are
    nonzero; after the first zero pivot the remaining minors are computed
    directly from their own submatrices.
    """
    a = _copy(matrix)
    n = len(a)
    minors = []
    det = Fraction(1)
    for k in range(n):
        pivot = a[k][k]
        det *= pivot
        minors.append(det)
        if pivot == 0:
            minors.extend(determinant([row[:m] for row in matrix[:m]]) for m in range(k + 2, n + 1))
            return minors
        for i in range(k + 1, n):
            f = a[i][k] / pivot
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return minors


def determinant(matrix) -> Fraction:
    a = _copy(matrix)
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


def inverse(matrix) -> list:
    """Gauss-Jordan inverse; raises ZeroDivisionError for singular input."""
    n = len(matrix)
    a = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(_copy(matrix))]
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            raise ZeroDivisionError("matrix is singular")
        a[k], a[p] = a[p], a[k]
        piv = a[k][k]
        a[k] = [x / piv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [row[n:] for row in a]


def kernel_vector(matrix):
    """A nonzero vector spanning the kernel when it is one-dimensional, else None."""
    a = _copy(matrix)
    rows, cols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    if len(free) != 1:
        return None
    f = free[0]
    v = [Fraction(0)] * cols
    v[f] = Fraction(1)
    for row_idx, c in enumerate(pivots):
        v[c] = -a[row_idx][f]
    return v


def matmul(a, b) -> list:
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]
