"""Small exact linear algebra over the rational backend.

Matrices are lists of row lists.  Everything here is dense Gaussian
elimination; sizes in this package stay below a few hundred.
"""

from __future__ import annotations

from ._rational import ZERO, ONE, q


def to_rational_matrix(rows):
    return [[q(x) for x in row] for row in rows]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), ZERO) for col in bt] for row in a]


def rref(rows, ncols=None):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    return len(rref(rows)[1])


def solve(a, b):
    """A particular solution of A x = b (free variables set to 0), or None."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    m, piv = rref(aug, ncols=n + 1)
    if n in piv:
        return None
    x = [ZERO] * n
    for row, c in zip(m, piv):
        x[c] = row[n]
    return x


def inverse(a):
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(n))]
    m, piv = rref(aug, ncols=n)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in m]


def min_norm_solve(a, b):
    """Minimum Euclidean-norm solution of a consistent system, exactly.

    x = A^T y with (A A^T) y = b; any particular y gives the same x.
    Returns None when the system is inconsistent.
    """
    if solve(a, b) is None:
        return None
    at = [list(c) for c in zip(*a)]
    aat = matmul(a, at)
    y = solve(aat, b)
    return [sum((r * yi for r, yi in zip(row, y)), ZERO) for row in at]
