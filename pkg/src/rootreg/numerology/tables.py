"""CSV/JSON export of computed table rows and catalog regeneration."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .families import generate_catalog

HEADER = ("name", "restricted type", "real rank", "n", "d", "v", "r")


def _records(rows):
    for row in rows:
        yield (row.name, row.restricted_type, row.real_rank, row.n, row.d, row.v, row.r)


def export_csv(rows, fh=None) -> str:
    buf = fh or io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    w.writerows(_records(rows))
    return buf.getvalue() if fh is None else ""


def export_json(rows) -> str:
    return json.dumps([dict(zip(HEADER, rec)) for rec in _records(rows)], indent=2)


def catalog_json(**bounds) -> str:
    return json.dumps(generate_catalog(**bounds), indent=1, sort_keys=False) + "\n"


def write_catalog(path: str | Path | None = None, **bounds) -> Path:
    if path is None:
        path = Path(__file__).with_name("data") / "catalog.json"
    path = Path(path)
    path.write_text(catalog_json(**bounds))
    return path
