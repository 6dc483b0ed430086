"""Real-form catalog and reproduction of the v and r table columns."""

from .catalog import (
    NumerologyRow,
    RealFormEntry,
    ValidationReport,
    catalog_path,
    get_entry,
    instantiate,
    list_real_forms,
    load_catalog,
    numerology_row,
    validate_tables,
)
from ..rootsys import CatalogError
from .families import ExcludedForm, generate_catalog
from .tables import catalog_json, export_csv, export_json, write_catalog

__all__ = [
    "CatalogError",
    "NumerologyRow",
    "RealFormEntry",
    "ValidationReport",
    "ExcludedForm",
    "catalog_path",
    "get_entry",
    "instantiate",
    "list_real_forms",
    "load_catalog",
    "numerology_row",
    "validate_tables",
    "generate_catalog",
    "catalog_json",
    "export_csv",
    "export_json",
    "write_catalog",
]
