"""Finite root systems in simple-root coordinates and restricted root data.

Roots are integer tuples ``(c_1, ..., c_r)`` meaning ``sum c_i alpha_i``.
Simple roots are the coordinate unit vectors, numbered 1..rank from left to
right in the Bourbaki diagram.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from types import MappingProxyType
from typing import Mapping

__all__ = [
    "RootSystemError",
    "CatalogError",
    "RootSystem",
    "RestrictedRootData",
    "CoarseClass",
    "build_root_system",
    "coarse_classes",
    "restricted_system",
    "root_count",
    "make_restricted",
]

TYPES = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2", "BC")

Root = tuple


class RootSystemError(ValueError):
    pass


class CatalogError(ValueError):
    pass


def _chain_gram(n, diag, links):
    g = [[0] * n for _ in range(n)]
    for i, d in enumerate(diag):
        g[i][i] = d
    for i, j, v in links:
        g[i][j] = g[j][i] = v
    return g


def _gram(type_label: str, rank: int):
    """Twice-normalized Gram matrix of the simple roots (integer entries)."""
    n = rank
    path = [(i, i + 1, -2) for i in range(n - 1)]
    if type_label == "A":
        return _chain_gram(n, [4] * n, path)
    if type_label in ("B", "BC"):
        return _chain_gram(n, [4] * (n - 1) + [2], path[:-1] + ([(n - 2, n - 1, -2)] if n > 1 else []))
    if type_label == "C":
        return _chain_gram(n, [4] * (n - 1) + [8], path[:-1] + [(n - 2, n - 1, -4)])
    if type_label == "D":
        links = [(i, i + 1, -2) for i in range(n - 2)] + [(n - 3, n - 1, -2)]
        return _chain_gram(n, [4] * n, links)
    if type_label in ("E6", "E7", "E8"):
        # Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4
        links = [(0, 2, -2), (2, 3, -2), (1, 3, -2)] + [(i, i + 1, -2) for i in range(3, n - 1)]
        return _chain_gram(n, [4] * n, links)
    if type_label == "F4":
        return _chain_gram(4, [4, 4, 2, 2], [(0, 1, -2), (1, 2, -2), (2, 3, -1)])
    if type_label == "G2":
        return _chain_gram(2, [2, 6], [(0, 1, -3)])
    raise RootSystemError(f"unknown type {type_label!r}")


_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4, "BC": 1}
_FIXED_RANK = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2}


def _check_pair(type_label, rank):
    if type_label not in TYPES:
        raise RootSystemError(f"unknown root system type {type_label!r}; expected one of {TYPES}")
    if not isinstance(rank, int) or rank < 1:
        raise RootSystemError(f"rank must be a positive integer, got {rank!r}")
    if type_label in _FIXED_RANK and rank != _FIXED_RANK[type_label]:
        raise RootSystemError(f"type {type_label} has rank {_FIXED_RANK[type_label]}, got {rank}")
    if type_label in _MIN_RANK and rank < _MIN_RANK[type_label]:
        raise RootSystemError(f"type {type_label}_n requires n >= {_MIN_RANK[type_label]}, got n = {rank}")


def root_count(type_label: str, rank: int) -> int:
    """Closed-form number of roots."""
    n = rank
    return {
        "A": n * (n + 1),
        "B": 2 * n * n,
        "C": 2 * n * n,
        "D": 2 * n * (n - 1),
        "BC": 2 * n * n + 2 * n,
        "E6": 72,
        "E7": 126,
        "E8": 240,
        "F4": 48,
        "G2": 12,
    }[type_label]


def _inner(gram, a, b):
    return sum(a[i] * gram[i][j] * b[j] for i in range(len(a)) for j in range(len(b)) if a[i] and b[j])


def _reflect(gram, beta, i):
    # s_i(beta) = beta - 2 (beta, a_i)/(a_i, a_i) a_i; integral for crystallographic systems
    num = 2 * sum(beta[j] * gram[j][i] for j in range(len(beta)))
    c, rem = divmod(num, gram[i][i])
    if rem:
        raise RootSystemError("non-integral reflection; Gram data corrupt")
    out = list(beta)
    out[i] -= c
    return tuple(out)


def _reduced_roots(gram, rank, depth_bound):
    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    seen = set(simple)
    frontier = list(simple)
    depth = 0
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(rank):
                g = _reflect(gram, beta, i)
                if g not in seen:
                    seen.add(g)
                    nxt.append(g)
        frontier = nxt
        depth += 1
        if depth > depth_bound:
            raise RootSystemError("reflection closure did not terminate")
    return seen


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    roots: tuple
    positive: frozenset
    root_class: Mapping = field(compare=False, repr=False)
    gram: tuple = field(compare=False, repr=False)

    @property
    def simple_roots(self):
        return tuple(tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank))

    @property
    def positive_roots(self):
        return tuple(r for r in self.roots if r in self.positive)

    @property
    def negative_roots(self):
        return tuple(r for r in self.roots if r not in self.positive)

    def is_root(self, beta) -> bool:
        return tuple(beta) in self._rootset

    @property
    def _rootset(self):
        # cached lazily on the frozen instance
        try:
            return self.__dict__["_rs"]
        except KeyError:
            rs = frozenset(self.roots)
            object.__setattr__(self, "_rs", rs)
            return rs

    @property
    def is_reduced(self) -> bool:
        return self.type_label != "BC"

    def highest_root(self):
        return max(self.positive_roots, key=lambda r: (sum(r), r))

    def reflect(self, beta, i):
        """Simple reflection s_i (1-based index) applied to ``beta``."""
        return _reflect(self.gram, tuple(beta), i - 1)

    def __str__(self):
        return f"{self.type_label}{self.rank}" if len(self.type_label) == 1 or self.type_label == "BC" else self.type_label


def build_root_system(type_label: str, rank: int) -> RootSystem:
    """Roots of a finite (possibly non-reduced) root system.

    Reduced types are generated as the orbit of the simple roots under the
    simple reflections.  ``BC_n`` is ``B_n`` together with twice each short
    root of ``B_n``.
    """
    _check_pair(type_label, rank)
    if type_label == "BC" and rank == 1:
        gram = [[2]]
        base = {(1,), (-1,)}
    else:
        gram = _gram(type_label, rank)
        base = _reduced_roots(gram, rank, root_count(type_label, rank))
    lengths = {r: _inner(gram, r, r) for r in base}
    classes = {}
    roots = set(base)
    if type_label == "BC":
        for r, ln in lengths.items():
            if ln == min(lengths.values()):
                classes[r] = "single"
                d = tuple(2 * c for c in r)
                roots.add(d)
                classes[d] = "double"
            else:
                classes[r] = "long"
    else:
        lo, hi = min(lengths.values()), max(lengths.values())
        for r, ln in lengths.items():
            classes[r] = "long" if (ln == hi) else "short"
        if lo == hi:
            classes = {r: "long" for r in base}
    ordered = tuple(sorted(roots))
    positive = frozenset(r for r in ordered if all(c >= 0 for c in r))
    expected = root_count(type_label, rank)
    if len(ordered) != expected or 2 * len(positive) != expected:
        raise RootSystemError(f"{type_label}{rank}: generated {len(ordered)} roots, expected {expected}")
    return RootSystem(
        type_label=type_label,
        rank=rank,
        roots=ordered,
        positive=positive,
        root_class=MappingProxyType(classes),
        gram=tuple(tuple(row) for row in gram),
    )


@dataclass(frozen=True)
class CoarseClass:
    representative: tuple
    members: frozenset

    def __contains__(self, beta):
        return tuple(beta) in self.members


def _primitive(beta):
    g = 0
    for c in beta:
        g = gcd(g, abs(c))
    return tuple(c // g for c in beta)


def coarse_classes(system: RootSystem) -> list:
    """Partition the roots into classes of positively proportional roots."""
    groups: dict = {}
    for r in system.roots:
        groups.setdefault(_primitive(r), set()).add(r)
    out = []
    for _, members in sorted(groups.items()):
        rep = min(members, key=lambda r: sum(abs(c) for c in r))
        out.append(CoarseClass(rep, frozenset(members)))
    return out


@dataclass(frozen=True)
class RestrictedRootData:
    """A root system with root-space multiplicities and real-form metadata."""

    system: RootSystem
    multiplicity: Mapping = field(compare=False)
    dim_g: int
    name: str = ""

    def __post_init__(self):
        mult = self.multiplicity
        for r in self.system.roots:
            m = mult.get(r)
            if not isinstance(m, int) or m < 1:
                raise CatalogError(f"{self.name or self.system}: multiplicity of {r} must be a positive integer")
            if mult.get(tuple(-c for c in r)) != m:
                raise CatalogError(f"{self.name or self.system}: m(beta) != m(-beta) for {r}")
        if self.center_dim_ma < self.real_rank:
            raise CatalogError(
                f"{self.name or self.system}: dimension bookkeeping fails "
                f"(dim g = {self.dim_g}, sum of multiplicities = {self.root_space_dim})"
            )

    @property
    def real_rank(self) -> int:
        return self.system.rank

    @property
    def root_space_dim(self) -> int:
        return sum(self.multiplicity[r] for r in self.system.roots)

    @property
    def center_dim_ma(self) -> int:
        """dim(m + a) = dim g minus the total dimension of the root spaces."""
        return self.dim_g - self.root_space_dim

    def m(self, beta) -> int:
        return self.multiplicity[tuple(beta)]


def make_restricted(
    system: RootSystem,
    dim_g: int,
    *,
    long_mult: int = 1,
    short_mult: int | None = None,
    single_mult: int | None = None,
    double_mult: int | None = None,
    name: str = "",
) -> RestrictedRootData:
    """Assign multiplicities by root class.

    For ``BC`` the classes are ``long`` (e_i +- e_j), ``single`` (e_i) and
    ``double`` (2 e_i); for the other types they are ``long`` and ``short``.
    """
    by_class = {
        "long": long_mult,
        "short": short_mult if short_mult is not None else long_mult,
        "single": single_mult,
        "double": double_mult,
    }
    mult = {}
    for r in system.roots:
        m = by_class[system.root_class[r]]
        if m is None:
            raise CatalogError(f"{name or system}: missing multiplicity for {system.root_class[r]} roots")
        mult[r] = m
    return RestrictedRootData(system, MappingProxyType(mult), dim_g, name)


def restricted_system(entry_name: str) -> RestrictedRootData:
    """Restricted root data of a named catalog entry, e.g. ``"su(2,3)"``."""
    from .numerology.catalog import get_entry

    return get_entry(entry_name).restricted_data()
