"""Parametrised families of real simple Lie algebras and their table data.

Each family maps integer parameters to restricted root data (type, rank,
multiplicities, dimension), the curated n and d values, and the expected v
and r values transcribed from the reference tables.  ``generate_catalog``
instantiates every family within the rank and excess bounds and is the
source of the shipped ``data/catalog.json``.
"""

from __future__ import annotations

import inspect

MAX_RANK = 8
MAX_EXCESS = 6  # largest m - n instantiated for the two-parameter families


class ExcludedForm(ValueError):
    """Parameters name an algebra that is not simple or is listed elsewhere."""


def _restricted(type_, rank, long=1, short=None, single=None, double=None):
    return {
        "type": type_,
        "rank": rank,
        "short_mult": short,
        "long_mult": long,
        "single_mult": single,
        "double_mult": double,
    }


def _entry(name, family, params, restricted, dim_g, n, d, v, r, footnotes=(), table=None):
    return {
        "name": name,
        "family": family,
        "params": dict(params),
        "restricted": restricted,
        "dim_g": dim_g,
        "n": n,
        "d": d,
        "expected": {"v": v, "r": r},
        "footnotes": list(footnotes),
        "table": table,
    }


# --- split forms -------------------------------------------------------------

def _sl_R(n):
    if n < 2:
        raise ExcludedForm("sl(n,R) needs n >= 2")
    notes = []
    if n == 2:
        notes.append("so(1,2) = sl(2,R)")
    if n == 4:
        notes.append("sl(4,R) = so(3,3)")
    return _entry(f"sl({n},R)", "sl(n,R)", {"n": n}, _restricted("A", n - 1), n * n - 1,
                  n, 5 if n == 4 else 2 * n - 2, n - 1, n - 1, notes, 1)


def _sp_R(n):
    if n < 2:
        raise ExcludedForm("sp(2n,R) needs n >= 2 (sp(2,R) = sl(2,R))")
    notes = ["so(2,3) = sp(4,R)"] if n == 2 else []
    return _entry(f"sp({2 * n},R)", "sp(2n,R)", {"n": n}, _restricted("C", n, long=1, short=1),
                  n * (2 * n + 1), 2 * n, 4 * n - 4, 2 * n - 1, 2 * n - 1, notes, 1)


def _so_nn1(n):
    if n < 3:
        raise ExcludedForm("so(n,n+1) needs n >= 3 (so(1,2) = sl(2,R), so(2,3) = sp(4,R))")
    return _entry(f"so({n},{n + 1})", "so(n,n+1)", {"n": n}, _restricted("B", n, long=1, short=1),
                  n * (2 * n + 1), 2 * n + 1, 2 * n, 2 * n - 1, 2 * n - 1, (), 1)


def _so_nn(n):
    if n == 2:
        raise ExcludedForm("so(2,2) is not simple")
    if n == 3:
        raise ExcludedForm("so(3,3) = sl(4,R)")
    if n < 2:
        raise ExcludedForm("so(n,n) needs n >= 4")
    return _entry(f"so({n},{n})", "so(n,n)", {"n": n}, _restricted("D", n), n * (2 * n - 1),
                  2 * n, 2 * n - 1, 2 * n - 2, 2 * n - 2, (), 1)


# --- complex forms -----------------------------------------------------------

def _sl_C(n):
    if n < 2:
        raise ExcludedForm("sl(n,C) needs n >= 2")
    notes = []
    if n == 2:
        notes += ["so(1,3) = sl(2,C)", "so(3,C) = sl(2,C)"]
    if n == 4:
        notes.append("sl(4,C) = so(6,C)")
    return _entry(f"sl({n},C)", "sl(n,C)", {"n": n}, _restricted("A", n - 1, long=2),
                  2 * (n * n - 1), 2 * n, 5 if n == 4 else 2 * n - 2, 2 * n - 2, n - 1, notes, 2)


def _sp_C(n):
    if n < 2:
        raise ExcludedForm("sp(2n,C) needs n >= 2")
    notes = ["so(5,C) = sp(4,C)"] if n == 2 else []
    return _entry(f"sp({2 * n},C)", "sp(2n,C)", {"n": n}, _restricted("C", n, long=2, short=2),
                  2 * n * (2 * n + 1), 4 * n, 4 * n - 4, 4 * n - 2, 2 * n - 1, notes, 2)


def _so_odd_C(n):
    if n < 3:
        raise ExcludedForm("so(2n+1,C) needs n >= 3")
    return _entry(f"so({2 * n + 1},C)", "so(2n+1,C)", {"n": n},
                  _restricted("B", n, long=2, short=2), 2 * n * (2 * n + 1),
                  4 * n + 2, 2 * n, 4 * n - 2, 2 * n - 1, (), 2)


def _so_even_C(n):
    if n == 2:
        raise ExcludedForm("so(4,C) is not simple")
    if n == 3:
        raise ExcludedForm("so(6,C) = sl(4,C)")
    if n < 2:
        raise ExcludedForm("so(2n,C) needs n >= 4")
    return _entry(f"so({2 * n},C)", "so(2n,C)", {"n": n}, _restricted("D", n, long=2),
                  2 * n * (2 * n - 1), 4 * n, 2 * n - 1, 4 * n - 4, 2 * n - 2, (), 2)


_COMPLEX_EXCEPTIONAL = {
    # name: (type, rank, complex dim, n, d, v, r)
    "e6(C)": ("E6", 6, 78, 54, 26, 32, 16),
    "e7(C)": ("E7", 7, 133, 112, 54, 54, 27),
    "e8(C)": ("E8", 8, 248, 496, 112, 114, 57),
    "f4(C)": ("F4", 4, 52, 52, 16, 30, 15),
    "g2(C)": ("G2", 2, 14, 14, 6, 10, 5),
}


def _complex_exceptional(name):
    t, rank, dim, n, d, v, r = _COMPLEX_EXCEPTIONAL[name]
    short = 2 if t in ("F4", "G2") else None
    return _entry(name, name, {}, _restricted(t, rank, long=2, short=short), 2 * dim,
                  n, d, v, r, (), 2)


# --- classical non-split forms -------------------------------------------------

def _sl_H(n):
    if n < 2:
        raise ExcludedForm("sl(n,H) needs n >= 2")
    notes = ["sl(2,H) = so(1,5)"] if n == 2 else []
    return _entry(f"sl({n},H)", "sl(n,H)", {"n": n}, _restricted("A", n - 1, long=4),
                  4 * n * n - 1, 6 if n == 2 else 4 * n, 5 if n == 2 else 4 * n - 2,
                  4 * n - 4, n - 1, notes, 3)


_SO_1M_ALIASES = {2: "sl(2,R)", 3: "sl(2,C)", 4: "sp(2,2)", 5: "sl(2,H)"}


def _so_nm(n, m):
    if not 1 <= n or m < n + 2:
        raise ExcludedForm("so(n,m) row needs 1 <= n and m >= n+2 (m <= n+1 is split)")
    if n == 1 and m in _SO_1M_ALIASES:
        raise ExcludedForm(f"so(1,{m}) = {_SO_1M_ALIASES[m]}")
    if (n, m) == (2, 4):
        raise ExcludedForm("so(2,4) = su(2,2)")
    if n == 1:
        restricted = _restricted("A", 1, long=m - 1)
    else:
        restricted = _restricted("B", n, long=1, short=m - n)
    N = n + m
    return _entry(f"so({n},{m})", "so(n,m)", {"n": n, "m": m}, restricted, N * (N - 1) // 2,
                  N, N - 1, N - 2, 2 * n - 1, (), 3)


def _su_nm(n, m):
    if n < 1 or m < n:
        raise ExcludedForm("su(n,m) needs 1 <= n <= m")
    if n == m == 1:
        raise ExcludedForm("su(1,1) = sl(2,R)")
    if n == m == 2:
        raise ExcludedForm("su(2,2) is listed as its own row")
    notes = ["so*(6) = su(1,3)"] if (n, m) == (1, 3) else []
    if n == m:
        restricted = _restricted("C", n, long=1, short=2)
    elif n == 1:
        restricted = _restricted("BC", 1, single=2 * (m - 1), double=1)
    else:
        restricted = _restricted("BC", n, long=2, single=2 * (m - n), double=1)
    N = n + m
    return _entry(f"su({n},{m})", "su(n,m)", {"n": n, "m": m}, restricted, N * N - 1,
                  2 * N, 2 * N - 2, 2 * N - 3, 2 * n - 1, notes, 3)


def _su22():
    return _entry("su(2,2)", "su(2,2)", {}, _restricted("C", 2, long=1, short=2), 15,
                  6, 5, 4, 3, ["su(2,2) = so(4,2)"], 3)


def _sp_nm(n, m):
    # sp(2n,2m) in the tables' notation: the compact-type-n, m quaternionic form
    if n < 1 or m < n:
        raise ExcludedForm("sp(2n,2m) needs 1 <= n <= m")
    if n == m == 1:
        raise ExcludedForm("sp(2,2) is listed as its own row")
    if n == m:
        restricted = _restricted("C", n, long=3, short=4)
    elif n == 1:
        restricted = _restricted("BC", 1, single=4 * (m - 1), double=3)
    else:
        restricted = _restricted("BC", n, long=4, single=4 * (m - n), double=3)
    N = n + m
    return _entry(f"sp({2 * n},{2 * m})", "sp(2n,2m)", {"n": n, "m": m}, restricted,
                  N * (2 * N + 1), 4 * N, 4 * N - 4, 4 * N - 5, 2 * n - 1, (), 3)


def _sp22():
    return _entry("sp(2,2)", "sp(2,2)", {}, _restricted("A", 1, long=3), 10,
                  5, 4, 3, 1, ["sp(2,2) = so(1,4)"], 3)


def _so_star(n):
    if n == 2:
        raise ExcludedForm("so*(4) is not simple")
    if n == 3:
        raise ExcludedForm("so*(6) = su(1,3)")
    if n < 4:
        raise ExcludedForm("so*(2n) needs n >= 4")
    if n % 2 == 0:
        restricted = _restricted("C", n // 2, long=1, short=4)
        r = n - 1
    else:
        k = (n - 1) // 2
        restricted = (_restricted("BC", 1, single=4, double=1) if k == 1 else
                      _restricted("BC", k, long=4, single=4, double=1))
        r = n - 2
    return _entry(f"so*({2 * n})", "so*(2n)", {"n": n}, restricted, n * (2 * n - 1),
                  4 * n, 2 * n - 1, 4 * n - 7, r, (), 3)


# --- exceptional real forms ---------------------------------------------------

_EXCEPTIONAL = {
    # name: (restricted, dim, n, d, v, r)
    "E_I": (_restricted("E6", 6), 78, 27, 26, 16, 16),
    "E_II": (_restricted("F4", 4, long=1, short=2), 78, 27, 26, 21, 15),
    "E_III": (_restricted("BC", 2, long=6, single=8, double=1), 78, 27, 26, 21, 3),
    "E_IV": (_restricted("A", 2, long=8), 78, 27, 26, 16, 3),
    "E_V": (_restricted("E7", 7), 133, 56, 54, 27, 27),
    "E_VI": (_restricted("F4", 4, long=1, short=4), 133, 56, 54, 33, 15),
    "E_VII": (_restricted("C", 3, long=1, short=8), 133, 56, 54, 27, 5),
    "E_VIII": (_restricted("E8", 8), 248, 248, 112, 57, 57),
    "E_IX": (_restricted("F4", 4, long=1, short=8), 248, 248, 112, 57, 15),
    "F_I": (_restricted("F4", 4, long=1, short=1), 52, 26, 16, 15, 15),
    "F_II": (_restricted("BC", 1, single=8, double=7), 52, 26, 16, 15, 1),
    "G": (_restricted("G2", 2, long=1, short=1), 14, 7, 6, 5, 5),
}


def _exceptional(name):
    restricted, dim, n, d, v, r = _EXCEPTIONAL[name]
    return _entry(name, name, {}, dict(restricted), dim, n, d, v, r, (), 4)


FAMILIES = {
    "sl(n,R)": _sl_R,
    "sp(2n,R)": _sp_R,
    "so(n,n+1)": _so_nn1,
    "so(n,n)": _so_nn,
    "sl(n,C)": _sl_C,
    "sp(2n,C)": _sp_C,
    "so(2n+1,C)": _so_odd_C,
    "so(2n,C)": _so_even_C,
    **{k: (lambda k=k: _complex_exceptional(k)) for k in _COMPLEX_EXCEPTIONAL},
    "sl(n,H)": _sl_H,
    "so(n,m)": _so_nm,
    "su(n,m)": _su_nm,
    "su(2,2)": _su22,
    "sp(2n,2m)": _sp_nm,
    "sp(2,2)": _sp22,
    "so*(2n)": _so_star,
    **{k: (lambda k=k: _exceptional(k)) for k in _EXCEPTIONAL},
}

FAMILY_ORDER = list(FAMILIES)


def family_entry(family: str, **params) -> dict:
    """Catalog record for one member of ``family``; raises ExcludedForm."""
    try:
        build = FAMILIES[family]
    except KeyError:
        raise KeyError(f"unknown family {family!r}") from None
    return build(**params)


def _params(family, max_rank, max_excess):
    one = range(1, 2 * max_rank + 2)
    if family in ("so(n,m)", "su(n,m)", "sp(2n,2m)"):
        for n in range(1, max_rank + 1):
            for m in range(n, n + max_excess + 1):
                yield {"n": n, "m": m}
    elif "n" in inspect.signature(FAMILIES[family]).parameters:
        for n in one:
            yield {"n": n}
    else:
        yield {}


def generate_catalog(max_rank: int = MAX_RANK, max_excess: int = MAX_EXCESS) -> list:
    out = []
    for family in FAMILY_ORDER:
        for params in _params(family, max_rank, max_excess):
            try:
                e = family_entry(family, **params)
            except ExcludedForm:
                continue
            if e["restricted"]["rank"] <= max_rank:
                out.append(e)
    return out
