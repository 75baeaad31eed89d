"""Exact u-equations, F-polynomials and positive parametrizations for
finite-dimensional algebras of finite representation type."""

__version__ = "0.1.0"

from .catalog import Catalog, load_catalog  # noqa: E402

__all__ = ["Catalog", "load_catalog", "__version__"]
