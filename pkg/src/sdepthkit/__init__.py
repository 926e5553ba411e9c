"""Stanley depth of monomial ideals and quotients: exact computation,
closed-form bounds for intersections of irreducible ideals, and homological
depth for comparison."""

__version__ = "0.1.0"

from .monomials import MonomialIdeal, RingContext  # noqa: E402
from .poset import compute_sdepth, sdepth_ideal, sdepth_module, sdepth_quotient  # noqa: E402

__all__ = [
    "MonomialIdeal",
    "RingContext",
    "compute_sdepth",
    "sdepth_ideal",
    "sdepth_module",
    "sdepth_quotient",
    "__version__",
]
