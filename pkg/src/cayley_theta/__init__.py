"""Exact Lovasz theta numbers of Cayley graphs via Fourier analysis on
finite groups."""

__version__ = "0.1.0"

from .graphs import ConnectionSet, Graph, alpha, build_cayley  # noqa: F401
from .groups import (make_abelian_product, make_from_table,  # noqa: F401
                     make_general_linear, make_symmetric)
from .theta import CayleyGraphSpec, solve_theta  # noqa: F401
