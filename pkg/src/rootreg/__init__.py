"""Root-system numerology, flag-variety charts, subresonant jets and graph transforms."""

from ._rational import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
