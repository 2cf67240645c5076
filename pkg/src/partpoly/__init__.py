"""Exact partition polynomials: generating functions, cyclotomic divisibility, root statistics."""

from .laurent import LaurentPoly, NotDivisible, QSeriesTable, lp_divide_exact, lp_eval_at_one, lp_reverse
from .genfun import OutOfScope, StatTable, Statistic, UnsupportedModulus, expand, stat_table
from .cyclo import DivisibilityReport, check_divisibility, congruence_sweep, cyclotomic, search_progressions
from .roots import PrincipalPoly, RootSet, principal_poly, solve_roots, star_discrepancy

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly", "NotDivisible", "QSeriesTable", "lp_divide_exact", "lp_eval_at_one", "lp_reverse",
    "OutOfScope", "StatTable", "Statistic", "UnsupportedModulus", "expand", "stat_table",
    "DivisibilityReport", "check_divisibility", "congruence_sweep", "cyclotomic", "search_progressions",
    "PrincipalPoly", "RootSet", "principal_poly", "solve_roots", "star_discrepancy",
]
