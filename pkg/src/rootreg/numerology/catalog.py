"""Loading the real-form catalog and computing table rows from it."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from ..parabolic import min_codim_v
from ..regularity import r_column
from ..rootsys import CatalogError, build_root_system, make_restricted
from .families import ExcludedForm, family_entry

__all__ = [
    "RealFormEntry",
    "NumerologyRow",
    "RowCheck",
    "ValidationReport",
    "catalog_path",
    "load_catalog",
    "list_real_forms",
    "get_entry",
    "instantiate",
    "numerology_row",
    "validate_tables",
]

CATALOG_ENV = "ROOTREG_CATALOG"
_DEFAULT = Path(__file__).with_name("data") / "catalog.json"
_REQUIRED = ("name", "family", "params", "restricted", "dim_g", "n", "d", "expected", "footnotes")


@dataclass(frozen=True)
class RealFormEntry:
    name: str
    family: str
    params: dict
    restricted: dict
    dim_g: int
    n: int
    d: int
    expected_v: int | None
    expected_r: int | None
    footnotes: tuple = ()
    table: int | None = None

    @property
    def restricted_type(self) -> str:
        return self.restricted["type"]

    @property
    def rank(self) -> int:
        return self.restricted["rank"]

    @property
    def type_label(self) -> str:
        t, k = self.restricted_type, self.rank
        return t if t[-1].isdigit() else f"{t}{k}"

    def restricted_data(self):
        r = self.restricted
        t = r["type"]
        system = build_root_system(t, r["rank"])
        return make_restricted(
            system,
            self.dim_g,
            long_mult=r.get("long_mult") or 1,
            short_mult=r.get("short_mult"),
            single_mult=r.get("single_mult"),
            double_mult=r.get("double_mult"),
            name=self.name,
        )

    @classmethod
    def from_dict(cls, rec: dict) -> "RealFormEntry":
        missing = [k for k in _REQUIRED if k not in rec]
        if missing:
            raise CatalogError(f"catalog record {rec.get('name', '?')!r} lacks {missing}")
        exp = rec["expected"] or {}
        return cls(
            name=rec["name"],
            family=rec["family"],
            params=dict(rec["params"]),
            restricted=dict(rec["restricted"]),
            dim_g=int(rec["dim_g"]),
            n=int(rec["n"]),
            d=int(rec["d"]),
            expected_v=exp.get("v"),
            expected_r=exp.get("r"),
            footnotes=tuple(rec["footnotes"]),
            table=rec.get("table"),
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "family": self.family,
            "params": dict(self.params),
            "restricted": dict(self.restricted),
            "dim_g": self.dim_g,
            "n": self.n,
            "d": self.d,
            "expected": {"v": self.expected_v, "r": self.expected_r},
            "footnotes": list(self.footnotes),
            "table": self.table,
        }


def catalog_path() -> Path:
    env = os.environ.get(CATALOG_ENV)
    return Path(env) if env else _DEFAULT


@lru_cache(maxsize=8)
def _load(path: str):
    try:
        raw = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise CatalogError(f"catalog file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog file {path} is not valid JSON: {exc}") from None
    if isinstance(raw, dict):
        raw = raw.get("entries", [])
    if not isinstance(raw, list):
        raise CatalogError(f"catalog {path}: expected a list of records")
    entries = tuple(RealFormEntry.from_dict(rec) for rec in raw)
    names = [e.name for e in entries]
    if len(set(names)) != len(names):
        raise CatalogError(f"catalog {path}: duplicate names")
    return entries


def load_catalog(path=None) -> tuple:
    return _load(str(path or catalog_path()))


def list_real_forms(family: str | None = None, rank: int | None = None, *,
                    predicate=None, path=None, **params) -> list:
    """Catalog entries in family-then-rank order, optionally filtered."""
    out = []
    for e in load_catalog(path):
        if family is not None and e.family != family:
            continue
        if rank is not None and e.rank != rank:
            continue
        if any(e.params.get(k) != v for k, v in params.items()):
            continue
        if predicate is not None and not predicate(e):
            continue
        out.append(e)
    return out


def get_entry(name: str, path=None) -> RealFormEntry:
    for e in load_catalog(path):
        if e.name == name:
            return e
    raise CatalogError(f"unknown catalog entry {name!r}")


# low-rank coincidences used when a family is instantiated outside its table range
_LOW_RANK = {("D", 3): ("A", 3), ("B", 1): ("A", 1), ("C", 1): ("A", 1)}


def instantiate(family: str, **params) -> RealFormEntry:
    """Build an entry for any family member, including footnoted duplicates.

    ``instantiate("so(n,n)", n=3)`` gives the A3 data of so(3,3) even though
    the catalog lists that algebra only as sl(4,R).  Expected values are left
    empty for such out-of-table members.
    """
    try:
        return RealFormEntry.from_dict(family_entry(family, **params))
    except ExcludedForm as exc:
        reason = str(exc)
    if family == "so(n,n)" and params.get("n") == 3:
        rec = {"name": "so(3,3)", "restricted": {"type": "A", "rank": 3, "long_mult": 1}, "dim_g": 15}
    elif family == "so(n,m)" and params.get("n") == 1 and params.get("m", 0) >= 2:
        m = params["m"]
        rec = {"name": f"so(1,{m})", "restricted": {"type": "A", "rank": 1, "long_mult": m - 1},
               "dim_g": (m + 1) * m // 2}
    elif family == "so(n,m)" and (params.get("n"), params.get("m")) == (2, 4):
        rec = {"name": "so(2,4)", "restricted": {"type": "C", "rank": 2, "long_mult": 1, "short_mult": 2},
               "dim_g": 15}
    elif family == "su(n,m)" and (params.get("n"), params.get("m")) == (2, 2):
        rec = {"name": "su(2,2)", "restricted": {"type": "C", "rank": 2, "long_mult": 1, "short_mult": 2},
               "dim_g": 15}
    elif family == "so*(2n)" and params.get("n") == 3:
        rec = {"name": "so*(6)", "restricted": {"type": "BC", "rank": 1, "single_mult": 4, "double_mult": 1},
               "dim_g": 15}
    elif family == "so(2n,C)" and params.get("n") == 3:
        rec = {"name": "so(6,C)", "restricted": {"type": "A", "rank": 3, "long_mult": 2}, "dim_g": 30}
    else:
        raise CatalogError(reason)
    rec.update(family=family, params=params, n=0, d=0, expected={}, footnotes=[reason])
    return RealFormEntry.from_dict(rec)


@dataclass(frozen=True)
class NumerologyRow:
    name: str
    restricted_type: str
    real_rank: int
    n: int
    d: int
    v: int
    r: int
    provenance: dict = field(default_factory=lambda: {
        "n": "curated", "d": "curated", "v": "computed", "r": "computed"})

    COLUMNS = ("name", "restricted_type", "real_rank", "n", "d", "v", "r")

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.COLUMNS}


def numerology_row(entry: RealFormEntry, *, r_rule: str = "min") -> NumerologyRow:
    data = entry.restricted_data()
    v, _ = min_codim_v(data)
    r = r_column(data, rule=r_rule)
    return NumerologyRow(entry.name, entry.type_label, entry.rank, entry.n, entry.d, v, r)


@dataclass(frozen=True)
class RowCheck:
    row: NumerologyRow
    expected_v: int | None
    expected_r: int | None

    @property
    def v_ok(self) -> bool:
        return self.expected_v is None or self.row.v == self.expected_v

    @property
    def r_ok(self) -> bool:
        return self.expected_r is None or self.row.r == self.expected_r

    @property
    def ok(self) -> bool:
        return self.v_ok and self.r_ok


@dataclass
class ValidationReport:
    checks: list

    @property
    def mismatches(self) -> list:
        return [c for c in self.checks if not c.ok]

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> dict:
        return {
            "checked": len(self.checks),
            "mismatches": [
                {"name": c.row.name, "v": c.row.v, "expected_v": c.expected_v,
                 "r": c.row.r, "expected_r": c.expected_r}
                for c in self.mismatches
            ],
        }


def validate_tables(max_rank: int | None = None, *, entries=None, r_rule: str = "min",
                    path=None) -> ValidationReport:
    """Compare computed v and r with the tabulated values, row by row."""
    if entries is None:
        entries = load_catalog(path)
    checks = []
    for e in entries:
        if max_rank is not None and e.rank > max_rank:
            continue
        row = numerology_row(e, r_rule=r_rule)
        checks.append(RowCheck(row, e.expected_v, e.expected_r))
    return ValidationReport(checks)
