"""Exact verification toolkit for two-parameter Cremmer-Gervais R-matrices,
their FRT quantum groups, and the associated factorizable Lie bialgebras."""

__version__ = "0.1.0"

from .laurent import LaurentPoly  # noqa: E402
from .tensor import SparseOperator  # noqa: E402

__all__ = ["LaurentPoly", "SparseOperator", "__version__"]
