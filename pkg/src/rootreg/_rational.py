"""Exact rational scalar backend.

``Q`` is ``gmpy2.mpq`` when gmpy2 imports cleanly, otherwise
``fractions.Fraction``.  Set ``ROOTREG_PURE=1`` to force the pure-Python
fallback.  Both types hash and compare identically, so values from either
backend can be mixed as dict keys and in equality tests.
"""

from __future__ import annotations

import os
from fractions import Fraction
from numbers import Rational

BACKEND = "fraction"
Q = Fraction

if os.environ.get("ROOTREG_PURE", "") not in ("1", "true", "yes"):
    try:
        from gmpy2 import mpq as _mpq
    except ImportError:  # pragma: no cover - depends on environment
        pass
    else:
        Q = _mpq
        BACKEND = "gmpy2"

ZERO = Q(0)
ONE = Q(1)


def q(value, den=None):
    """Coerce ``value`` (int, rational, or 'a/b' string) to the backend type."""
    if den is not None:
        return Q(int(value), int(den))
    if isinstance(value, str):
        value = Fraction(value)
    if isinstance(value, float):
        raise TypeError("refusing to coerce a float to an exact rational")
    if isinstance(value, Rational):
        return Q(int(value.numerator), int(value.denominator))
    return Q(value)


def is_exact(value) -> bool:
    return isinstance(value, (int, Rational)) and not isinstance(value, bool)


def to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def rstr(value) -> str:
    """Canonical 'p/q' (or 'p') string used in JSON output."""
    f = to_fraction(q(value))
    return str(f)


def simplest_between(lo, hi):
    """Fraction with the smallest denominator in the closed interval [lo, hi].

    Classic continued-fraction descent; ``lo <= hi`` required.
    """
    lo, hi = to_fraction(q(lo)), to_fraction(q(hi))
    if lo > hi:
        raise ValueError("empty interval")
    if lo <= 0 <= hi:
        return q(0)
    if hi < 0:
        return -simplest_between(-hi, -lo)
    # 0 < lo <= hi
    fl = lo.numerator // lo.denominator
    if fl == lo:
        return q(lo)
    if fl + 1 <= hi:
        return q(fl + 1)
    # lo and hi share the integer part fl; recurse on reciprocals of the tails
    tail = simplest_between(1 / (hi - fl), 1 / (lo - fl))
    return q(fl) + 1 / q(tail)


def farey_predecessor(value, max_den: int):
    """Largest fraction with denominator <= max_den strictly below ``value``.

    ``value`` itself must have denominator <= max_den.
    """
    v = to_fraction(q(value))
    a, b = v.numerator, v.denominator
    if b > max_den:
        raise ValueError("value denominator exceeds max_den")
    # a*d - b*c = 1 with d <= max_den maximal gives the left Farey neighbour c/d
    # extended Euclid for b^-1 mod ... solve a*d ≡ 1 (mod b)
    if b == 1:
        return q(a * max_den - 1, max_den)
    d0 = pow(a % b, -1, b)
    d = d0 + ((max_den - d0) // b) * b
    c = (a * d - 1) // b
    return q(c, d)
