"""Exact feasibility of rational linear inequality systems ``A s <= b``.

Two independent routes:

* ``fourier_motzkin`` eliminates variables one at a time and back-substitutes
  a witness.  Exact and simple; practical for a handful of variables.
* ``simplex`` solves the Farkas-dual program

      min b.y  subject to  A^T y = 0,  sum(y) = 1,  y >= 0

  with a two-phase tableau simplex (Bland's rule, exact pivots).  The
  system is feasible iff the optimum is >= 0, and the simplex multipliers
  of the optimal basis are a witness.  The tableau has only rank+1 rows,
  which is what keeps E8-sized inputs cheap.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._rational import ONE, ZERO, q

__all__ = ["LPResult", "feasible", "simplex", "fourier_motzkin", "FM_MAX_VARS"]

FM_MAX_VARS = 4


@dataclass
class LPResult:
    feasible: bool
    witness: list | None
    method: str
    optimum: object = None


def _as_rows(A, b):
    A = [[q(x) for x in row] for row in A]
    b = [q(x) for x in b]
    if len(A) != len(b):
        raise ValueError("A and b have different lengths")
    return A, b


def _check(A, b, s):
    return all(sum((x * y for x, y in zip(row, s)), ZERO) <= bi for row, bi in zip(A, b))


def feasible(A, b, method: str = "auto", nvars: int | None = None) -> LPResult:
    A, b = _as_rows(A, b)
    n = nvars if nvars is not None else (len(A[0]) if A else 0)
    if method == "auto":
        method = "fm" if n <= FM_MAX_VARS else "simplex"
    if method == "fm":
        res = fourier_motzkin(A, b, n)
    elif method == "simplex":
        res = simplex(A, b, n)
    else:
        raise ValueError(f"unknown method {method!r}")
    if res.feasible and not _check(A, b, res.witness):
        raise AssertionError(f"{method}: witness fails the system")
    return res


# ---------------------------------------------------------------------------
# simplex on the Farkas dual


def _pivot(T, r, c):
    piv = T[r][c]
    if piv != ONE:
        inv = ONE / piv
        T[r] = [x * inv for x in T[r]]
    row = T[r]
    for i in range(len(T)):
        if i != r:
            f = T[i][c]
            if f:
                Ti = T[i]
                T[i] = [x - f * y if y else x for x, y in zip(Ti, row)]


def _run(T, basis, obj, allowed):
    """Minimise with objective row ``obj`` (index into T); Bland's rule."""
    rhs = len(T[0]) - 1
    while True:
        z = T[obj]
        enter = next((j for j in allowed if z[j] < 0), None)
        if enter is None:
            return
        best = None
        for i, bi in enumerate(basis):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][rhs] / a
                key = (ratio, bi)
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise ArithmeticError("unbounded direction in a bounded program")
        r = best[1]
        _pivot(T, r, enter)
        basis[r] = enter


def simplex(A, b, n) -> LPResult:
    A, b = _as_rows(A, b)
    m = len(A)
    if m == 0:
        return LPResult(True, [ZERO] * n, "simplex", None)
    rows = n + 1
    ncol = m + rows  # y columns then artificials
    rhs_col = ncol
    T = []
    for k in range(rows):
        if k < n:
            coeffs = [A[j][k] for j in range(m)]
            rhs = ZERO
        else:
            coeffs = [ONE] * m
            rhs = ONE
        art = [ONE if i == k else ZERO for i in range(rows)]
        T.append(coeffs + art + [rhs])
    basis = [m + k for k in range(rows)]
    # phase 1 objective: sum of artificials, priced out
    p1 = [ZERO] * (ncol + 1)
    for k in range(rows):
        p1 = [x - y for x, y in zip(p1, T[k])]
    for k in range(rows):
        p1[m + k] = ZERO
    # phase 2 objective b.y priced out later
    p2 = list(b) + [ZERO] * rows + [ZERO]
    T.append(p2)
    T.append(p1)
    obj2, obj1 = rows, rows + 1
    _run(T, basis, obj1, range(m))
    phase1 = -T[obj1][rhs_col]
    if phase1 > 0:
        # no Farkas certificate: A s < 0 has a solution; recover and scale it
        pi = [ONE - T[obj1][m + k] for k in range(rows)]
        s = pi[:n]
        vals = [sum((x * y for x, y in zip(row, s)), ZERO) for row in A]
        neg = max(vals)
        if neg >= 0:
            raise AssertionError("phase-1 multipliers do not give a strict direction")
        t = max([ZERO] + [bi / v for bi, v in zip(b, vals)])
        t = t if t > 0 else ZERO
        return LPResult(True, [t * x for x in s], "simplex", None)
    # drive zero-level artificials out of the basis where possible
    for i, bi in enumerate(basis):
        if bi >= m:
            c = next((j for j in range(m) if T[i][j] != 0), None)
            if c is not None:
                _pivot(T, i, c)
                basis[i] = c
    T.pop()  # phase-1 row
    _run(T, basis, obj2, range(m))
    opt = -T[obj2][rhs_col]
    pi = [-T[obj2][m + k] for k in range(rows)]
    s = pi[:n]
    if opt >= 0:
        return LPResult(True, s, "simplex", opt)
    return LPResult(False, None, "simplex", opt)


# ---------------------------------------------------------------------------
# Fourier-Motzkin


def _normalise(row, bi):
    lead = next((x for x in row if x != 0), None)
    if lead is None:
        return tuple(row), bi
    s = abs(lead)
    return tuple(x / s for x in row), bi / s


def _reduce(cons):
    best = {}
    for row, bi in cons:
        key, val = _normalise(row, bi)
        if key not in best or val < best[key]:
            best[key] = val
    return list(best.items())


def fourier_motzkin(A, b, n) -> LPResult:
    A, b = _as_rows(A, b)
    cons = _reduce(zip(A, b))
    history = []
    for k in range(n - 1, -1, -1):
        history.append(cons)
        pos, neg, zero = [], [], []
        for row, bi in cons:
            c = row[k]
            if c > 0:
                pos.append((tuple(x / c for x in row), bi / c))
            elif c < 0:
                neg.append((tuple(x / -c for x in row), bi / -c))
            else:
                zero.append((row, bi))
        new = list(zero)
        for pr, pb in pos:
            for nr, nb in neg:
                new.append((tuple(x + y for x, y in zip(pr, nr)), pb + nb))
        cons = _reduce(new)
        for row, bi in cons:
            if all(x == 0 for x in row) and bi < 0:
                return LPResult(False, None, "fm")
    s = [ZERO] * n
    for k, level in zip(range(n), reversed(history)):
        lo = hi = None
        for row, bi in level:
            c = row[k]
            if c == 0:
                continue
            rest = bi - sum((row[j] * s[j] for j in range(k)), ZERO)
            bound = rest / c
            if c > 0:
                hi = bound if hi is None or bound < hi else hi
            else:
                lo = bound if lo is None or bound > lo else lo
        if lo is not None and hi is not None and lo > hi:
            raise AssertionError("Fourier-Motzkin back-substitution inconsistent")
        if lo is not None and lo > 0:
            s[k] = lo
        elif hi is not None and hi < 0:
            s[k] = hi
        else:
            s[k] = ZERO
    return LPResult(True, s, "fm")
