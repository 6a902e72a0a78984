"""Lyapunov exponents of random products in SL(2) over Laurent polynomials.

The t-adic side works with exact Laurent/Puiseux series over Q(i); the
complex side specializes the same matrices at a fixed small ``t``.
"""

__version__ = "0.1.0"

from .laurent import GRat, Series, PrecisionExhausted, t  # noqa: F401
from .sl2na import MatNA, P1NA, BallNA  # noqa: F401
from .walks import MeasureSpec, Estimate  # noqa: F401
from .specparse import parse_laurent, parse_spec, load_spec, bundled_spec  # noqa: F401
