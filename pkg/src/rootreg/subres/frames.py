"""Finite point sets on which subresonant jets are determined by their values."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .. import linalg
from .._rational import q
from .weights import LyapunovWeights, subresonant_basis

__all__ = ["FrameError", "EvaluationFrame", "evaluation_frame", "certify_frame"]


class FrameError(ValueError):
    def __init__(self, message, rank=None, needed=None):
        super().__init__(message)
        self.rank = rank
        self.needed = needed


@dataclass(frozen=True)
class EvaluationFrame:
    points: tuple
    rank: int
    dimension: int


def _monomial_value(pt, alpha):
    v = q(1)
    for x, e in zip(pt, alpha):
        if e:
            v *= x ** e
    return v


def certify_frame(basis, points):
    """Exact rank of the evaluation map P -> (values at points).

    Output components decouple, so the rank is the sum over components of the
    rank of the point/monomial matrix for that component's monomials.
    """
    by_comp = {}
    for j, alpha in basis:
        by_comp.setdefault(j, []).append(alpha)
    total = 0
    for mons in by_comp.values():
        rows = [[_monomial_value(p, a) for a in mons] for p in points]
        total += linalg.rank(rows) if rows else 0
    return total


def _random_point(rng, dim, radius, den=97):
    r = q(radius)
    while True:
        pt = [q(rng.randint(-den, den), den) * r for _ in range(dim)]
        if sum(x * x for x in pt) < r * r and any(pt):
            return pt


def evaluation_frame(weights: LyapunovWeights, radius=1, candidate_count: int | None = None,
                     seed: int = 0, *, out_weights=None, constants=False, retries: int = 10,
                     points=None) -> EvaluationFrame:
    """Sample rational points in the ball of ``radius`` until evaluation is injective.

    ``points`` may be given to certify a fixed set instead of sampling.
    """
    basis, dim = subresonant_basis(weights, out_weights, constants=constants)
    needed = dim
    if points is not None:
        pts = [[q(x) for x in p] for p in points]
        rk = certify_frame(basis, pts)
        if rk < needed:
            raise FrameError(f"evaluation rank {rk} < {needed} on the given points", rk, needed)
        return EvaluationFrame(tuple(map(tuple, pts)), rk, dim)
    per_comp = {}
    for j, _ in basis:
        per_comp[j] = per_comp.get(j, 0) + 1
    count = candidate_count or max(per_comp.values(), default=1)
    rng = random.Random(seed)
    rk = 0
    for _ in range(retries):
        pts = [_random_point(rng, weights.total_dim, radius) for _ in range(count)]
        rk = certify_frame(basis, pts)
        if rk == needed:
            return EvaluationFrame(tuple(map(tuple, pts)), rk, dim)
    raise FrameError(f"could not certify a frame: rank {rk} < {needed} after {retries} tries", rk, needed)
