"""Standard parabolic subalgebras q_S and their excluded root sets."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ._rational import q as _q, ZERO
from .rootsys import RestrictedRootData

__all__ = [
    "Parabolic",
    "CoweightVector",
    "standard_parabolic",
    "cone_contains",
    "min_codim_v",
    "all_parabolics",
]


@dataclass(frozen=True)
class CoweightVector:
    """Element s of a, recorded by the values alpha_i(s) on the simple roots."""

    coords: tuple

    def __init__(self, coords):
        object.__setattr__(self, "coords", tuple(_q(c) for c in coords))

    def pair(self, beta):
        return sum((b * c for b, c in zip(beta, self.coords) if b), ZERO)

    __call__ = pair

    def __add__(self, other):
        return CoweightVector(a + b for a, b in zip(self.coords, other.coords))

    def scaled(self, k):
        return CoweightVector(k * a for a in self.coords)

    def __len__(self):
        return len(self.coords)


@dataclass(frozen=True)
class Parabolic:
    data: RestrictedRootData
    S: frozenset
    sigma_q: tuple
    sigma_q_perp: tuple

    @property
    def system(self):
        return self.data.system

    @property
    def codim(self) -> int:
        return sum(self.data.m(b) for b in self.sigma_q_perp)

    @property
    def is_trivial(self) -> bool:
        """True when S is empty, i.e. q = g and the cone condition is vacuous."""
        return not self.S

    def __repr__(self):
        s = ",".join(f"a{i}" for i in sorted(self.S))
        return f"Parabolic({self.data.name or self.system}, S={{{s}}}, codim={self.codim})"


def _perp(system, S):
    idx = [i - 1 for i in S]
    return tuple(
        r for r in system.roots
        if r not in system.positive and any(r[i] != 0 for i in idx)
    )


def standard_parabolic(data: RestrictedRootData, S) -> Parabolic:
    """Build q_S for a set S of 1-based simple-root indices.

    A root lies outside q_S exactly when it is negative and has a nonzero
    alpha_i coefficient for some i in S.
    """
    S = frozenset(int(i) for i in S)
    rank = data.system.rank
    if not S <= set(range(1, rank + 1)):
        raise ValueError(f"S must be a subset of 1..{rank}, got {sorted(S)}")
    perp = _perp(data.system, S)
    perp_set = set(perp)
    sigma_q = tuple(r for r in data.system.roots if r not in perp_set)
    # v_q is a subalgebra: sums of excluded roots that are roots stay excluded
    for a, b in combinations(perp, 2):
        c = tuple(x + y for x, y in zip(a, b))
        if data.system.is_root(c) and c not in perp_set:
            raise AssertionError(f"excluded roots not closed under addition: {a} + {b}")
    return Parabolic(data, S, sigma_q, perp)


def cone_contains(p: Parabolic, s: CoweightVector) -> bool:
    """Whether beta(s) < 0 for every excluded root beta (vacuously true if S is empty)."""
    if not isinstance(s, CoweightVector):
        s = CoweightVector(s)
    return all(s.pair(b) < 0 for b in p.sigma_q_perp)


def all_parabolics(data: RestrictedRootData, *, proper_only=True):
    rank = data.system.rank
    start = 1 if proper_only else 0
    for k in range(start, rank + 1):
        for S in combinations(range(1, rank + 1), k):
            yield standard_parabolic(data, S)


def min_codim_v(data: RestrictedRootData):
    """v(g) together with every singleton S achieving it, ordered by index.

    Codimension only grows when S grows, so singletons suffice.
    """
    best = None
    argmin = []
    for i in range(1, data.system.rank + 1):
        c = standard_parabolic(data, {i}).codim
        if best is None or c < best:
            best, argmin = c, [frozenset({i})]
        elif c == best:
            argmin.append(frozenset({i}))
    return best, argmin
