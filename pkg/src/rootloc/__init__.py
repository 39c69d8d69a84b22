"""Localisation of all roots of a square-free complex polynomial in small discs.

Square-freeness is checked with the Sylvester resultant, the roots are
bounded with Cauchy-type estimates, and regions are split along circles and
rays whose root counts come from winding numbers of sampled contours.
"""

from .algebra import discriminant, is_square_free, resultant, resultant_with_error
from .bounds import BoundsReport, global_bounds
from .contours import BudgetExhausted, CertificationError, Evaluator, count_in_annulus, count_in_segment
from .localizer import LocalizeConfig, LocalizeResult, NotSquareFree, RootDisc, enclosing_disc, localize
from .poly import Polynomial, derivative, evaluate, norm2

__all__ = [
    "Polynomial",
    "evaluate",
    "derivative",
    "norm2",
    "resultant",
    "resultant_with_error",
    "discriminant",
    "is_square_free",
    "BoundsReport",
    "global_bounds",
    "Evaluator",
    "count_in_annulus",
    "count_in_segment",
    "BudgetExhausted",
    "CertificationError",
    "LocalizeConfig",
    "LocalizeResult",
    "RootDisc",
    "NotSquareFree",
    "localize",
    "enclosing_disc",
]

__version__ = "0.1.0"
