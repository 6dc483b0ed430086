"""Lyapunov weights on graded vector spaces and subresonant monomials."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .._rational import is_exact, q

__all__ = ["LyapunovWeights", "subresonant_basis", "monomials", "weight_le", "degree_bound"]

FLOAT_SLACK = 1e-12


def _num(x):
    if isinstance(x, str):
        return q(x)
    if is_exact(x):
        return q(x)
    return float(x)


def weight_le(a, b) -> bool:
    """a <= b, with a relative slack when either side is a float."""
    if is_exact(a) and is_exact(b):
        return a <= b
    return float(a) <= float(b) + FLOAT_SLACK * max(1.0, abs(float(a)), abs(float(b)))


@dataclass(frozen=True)
class LyapunovWeights:
    """Strictly increasing negative weights with multiplicities.

    Coordinates are ordered by weight, so the first ``multiplicities[0]``
    coordinates carry ``values[0]`` (the most contracted direction).
    """

    values: tuple
    multiplicities: tuple

    def __init__(self, values, multiplicities=None):
        vals = tuple(_num(v) for v in values)
        mults = tuple(int(m) for m in (multiplicities or [1] * len(vals)))
        if len(vals) != len(mults) or not vals:
            raise ValueError("need one positive multiplicity per weight")
        if any(m <= 0 for m in mults):
            raise ValueError("multiplicities must be positive")
        if any(v >= 0 for v in vals):
            raise ValueError("Lyapunov weights must be negative")
        if any(not a < b for a, b in zip(vals, vals[1:])):
            raise ValueError("weights must be strictly increasing")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "multiplicities", mults)

    @classmethod
    def from_coordinates(cls, coords):
        """Group a per-coordinate weight list (already sorted) into values/multiplicities."""
        vals, mults = [], []
        for w in coords:
            if vals and w == vals[-1]:
                mults[-1] += 1
            else:
                vals.append(w)
                mults.append(1)
        return cls(vals, mults)

    @property
    def total_dim(self) -> int:
        return sum(self.multiplicities)

    @property
    def coordinate_weights(self) -> tuple:
        return tuple(v for v, m in zip(self.values, self.multiplicities) for _ in range(m))

    @property
    def flag_dims(self) -> tuple:
        out, k = [], 0
        for m in self.multiplicities:
            k += m
            out.append(k)
        return tuple(out)

    @property
    def lowest(self):
        return self.values[0]

    @property
    def highest(self):
        return self.values[-1]

    def monomial_weight(self, alpha):
        """Weight of the tensor/monomial x^alpha: sum of alpha_i * w_i."""
        return sum((a * w for a, w in zip(alpha, self.coordinate_weights) if a), 0)


def degree_bound(in_w: LyapunovWeights, out_w: LyapunovWeights | None = None) -> int:
    """floor(eta_1 / lambda_l): no subresonant monomial has higher degree."""
    out_w = out_w or in_w
    ratio = out_w.lowest / in_w.highest
    if is_exact(ratio):
        return int(math.floor(ratio))
    return int(math.floor(float(ratio) + FLOAT_SLACK))


def monomials(dim: int, degree: int, *, min_degree: int = 1):
    """Exponent tuples in ``dim`` variables, by degree then lexicographically reversed."""
    for k in range(min_degree, degree + 1):
        out = []
        for combo in combinations_with_replacement(range(dim), k):
            a = [0] * dim
            for i in combo:
                a[i] += 1
            out.append(tuple(a))
        yield from sorted(out, reverse=True)


def is_subresonant_term(in_w, out_w, component: int, alpha) -> bool:
    if not any(alpha):
        return True
    eta = out_w.coordinate_weights[component]
    return weight_le(eta, in_w.monomial_weight(alpha))


def subresonant_basis(in_w: LyapunovWeights, out_w: LyapunovWeights | None = None, *,
                      constants: bool = False, degree: int | None = None):
    """All (component, monomial) pairs allowed in a subresonant map.

    Returns ``(basis, dimension)``.  Constants are always permitted (weights
    are negative) and are listed only when ``constants`` is set.
    """
    out_w = out_w or in_w
    d = degree_bound(in_w, out_w) if degree is None else degree
    n = in_w.total_dim
    basis = []
    for j in range(out_w.total_dim):
        if constants:
            basis.append((j, (0,) * n))
        for alpha in monomials(n, d):
            if is_subresonant_term(in_w, out_w, j, alpha):
                basis.append((j, alpha))
    return basis, len(basis)
