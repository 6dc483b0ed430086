"""Critical regularity r0 of a parabolic, r_min, and coarse-root counts.

r0(q) is the infimum over the open negative cone of the largest ratio
beta(s)/beta'(s) between excluded roots.  Since the ratio is scale free we
normalise min(-beta(s)) to 1, and feasibility of a candidate t becomes the
linear system

    1 <= -beta(s) <= t    for every excluded beta,

which is equivalent to the pairwise system beta(s) >= t*beta'(s),
beta(s) <= -1 (kept behind ``pairwise=True`` for cross-checking).
"""

from __future__ import annotations

import math

import numpy as np
from dataclasses import dataclass

from ._rational import ONE, ZERO, farey_predecessor, q, simplest_between
from .lp import feasible as lp_feasible
from .parabolic import CoweightVector, Parabolic, min_codim_v, standard_parabolic
from .rootsys import coarse_classes

__all__ = [
    "RegularityResult",
    "TieInconsistency",
    "r0_feasible",
    "r0",
    "r_min",
    "coarse_count",
    "r_column",
    "grid_r0",
    "denominator_bound",
]


class TieInconsistency(ValueError):
    """Parabolics of equal minimal codimension disagree on the coarse count."""

    def __init__(self, witnesses):
        self.witnesses = witnesses
        parts = ", ".join(f"S={sorted(S)} -> {c}" for S, c in witnesses)
        super().__init__(f"codim-v parabolics give different coarse counts: {parts}")


@dataclass(frozen=True)
class RegularityResult:
    value: object
    witness: CoweightVector
    tight_pairs: tuple
    denominator_bound: int = 0
    lp_calls: int = 0

    def __float__(self):
        return float(self.value)


def _excluded(p: Parabolic):
    if not p.S:
        raise ValueError("r0 is undefined for S = {} (no excluded roots)")
    return p.sigma_q_perp


def denominator_bound(p: Parabolic) -> int:
    """Bound on the denominator of r0(p).

    The optimum is attained at a vertex of the (s, t) program, so t is a
    ratio of (rank+1)-square integer determinants whose last column is 0/-1.
    """
    rank = p.system.rank
    coef = max(abs(x) for b in p.sigma_q_perp for x in b)
    return math.factorial(rank + 1) * coef ** rank


def _system(p, t, pairwise):
    perp = _excluded(p)
    A, b = [], []
    for beta in perp:
        A.append(list(beta))
        b.append(-ONE)
    if pairwise:
        for beta in perp:
            for other in perp:
                if beta is other:
                    continue
                # beta(s) >= t*other(s)  <=>  t*other(s) - beta(s) <= 0
                A.append([t * y - x for x, y in zip(beta, other)])
                b.append(ZERO)
    else:
        for beta in perp:
            A.append([-x for x in beta])
            b.append(t)
    return A, b


def _solve(p, t, pairwise=False, method="auto"):
    t = q(t)
    A, b = _system(p, t, pairwise)
    return lp_feasible(A, b, method=method, nvars=p.system.rank)


def r0_feasible(p: Parabolic, t, *, pairwise: bool = False, method: str = "auto") -> bool:
    """Is there s in the cone with every ratio beta(s)/beta'(s) at most t?"""
    t = q(t)
    _excluded(p)
    if t < ONE:
        # the largest ratio is never below the smallest
        return False
    return _solve(p, t, pairwise, method).feasible


def _ratio(p, s):
    vals = [-s.pair(b) for b in p.sigma_q_perp]
    lo = min(vals)
    if lo <= 0:
        raise ValueError("point is not in the open cone")
    return max(vals) / lo


def _tight(p, s):
    vals = {b: s.pair(b) for b in p.sigma_q_perp}
    most = min(vals.values())
    least = max(vals.values())
    return tuple(
        (a, b) for a in p.sigma_q_perp if vals[a] == most
        for b in p.sigma_q_perp if vals[b] == least
    )


def r0(p: Parabolic, *, pairwise: bool = False, method: str = "auto") -> RegularityResult:
    """Exact r0(p) by bisection on t with a Farey-neighbour certificate."""
    _excluded(p)
    D = denominator_bound(p)
    calls = 0

    def test(t):
        nonlocal calls
        calls += 1
        return _solve(p, t, pairwise, method)

    s_best = CoweightVector([ONE if i + 1 in p.S else ZERO for i in range(p.system.rank)])
    hi = _ratio(p, s_best)
    lo = ONE
    value = None
    while True:
        # hi is attained; it is optimal iff the next smaller admissible
        # rational is already infeasible
        if hi.denominator <= D:
            if hi == ONE:
                value = hi
                break
            pred = farey_predecessor(hi, D)
            if pred < lo:
                value = hi
                break
            res = test(pred)
            if not res.feasible:
                value = hi
                break
            s_best = CoweightVector(res.witness)
            hi = _ratio(p, s_best)
            if hi - lo < ONE / (D * D):
                break
        mid = (lo + hi) / 2
        res = test(mid)
        if res.feasible:
            s_best = CoweightVector(res.witness)
            hi = _ratio(p, s_best)
        else:
            lo = mid
        if hi - lo < ONE / (D * D):
            break
    if value is None:
        value = simplest_between(lo, hi)
        res = test(value)
        if not res.feasible:
            raise ArithmeticError(f"rational reconstruction failed for {p}: {value}")
        s_best = CoweightVector(res.witness)
    # certificate: feasible at value, infeasible just below it
    if value > ONE and test(value - ONE / D).feasible:
        raise ArithmeticError(f"r0 certificate failed for {p}: {value}")
    if _ratio(p, s_best) > value:
        res = test(value)
        s_best = CoweightVector(res.witness)
    return RegularityResult(value, s_best, _tight(p, s_best), D, calls)


def r_min(data) -> object:
    """Largest r0 among parabolics of minimal codimension v(g)."""
    _, argmin = min_codim_v(data)
    return max(r0(standard_parabolic(data, S)).value for S in argmin)


def coarse_count(p: Parabolic) -> int:
    """Number of coarse root classes lying entirely among the excluded roots."""
    _excluded(p)
    perp = set(p.sigma_q_perp)
    return sum(1 for c in coarse_classes(p.system) if set(c.members) <= perp)


def r_column(data, rule: str = "min") -> int:
    """Operational value of the tables' r column.

    ``rule="min"`` takes the least coarse count over maximal parabolics;
    ``rule="codim-v"`` takes it at a parabolic of codimension v(g) and raises
    TieInconsistency when the achieving parabolics disagree.
    """
    rank = data.system.rank
    if rule == "min":
        return min(coarse_count(standard_parabolic(data, {i})) for i in range(1, rank + 1))
    if rule == "codim-v":
        _, argmin = min_codim_v(data)
        counts = [(S, coarse_count(standard_parabolic(data, S))) for S in argmin]
        if len({c for _, c in counts}) > 1:
            raise TieInconsistency(counts)
        return counts[0][1]
    raise ValueError(f"unknown rule {rule!r}")


def grid_r0(p: Parabolic, K: int = 6) -> object:
    """Brute-force upper bound for r0: best ratio over integer s in [-K, K]^rank.

    Ratios are ranked in floating point, then the near-best candidates are
    compared exactly.
    """
    perp = np.array(_excluded(p), dtype=np.int64)
    axis = np.arange(-K, K + 1, dtype=np.int64)
    grid = np.stack(np.meshgrid(*[axis] * p.system.rank, indexing="ij"), -1).reshape(-1, p.system.rank)
    vals = -(grid @ perp.T)
    lo, hi = vals.min(axis=1), vals.max(axis=1)
    keep = lo > 0
    if not keep.any():
        return None
    lo, hi = lo[keep], hi[keep]
    ratio = hi / lo
    near = np.nonzero(ratio <= ratio.min() * (1 + 1e-12))[0]
    return min(q(int(hi[i]), int(lo[i])) for i in near)
