"""Taylor-series zero coupon bond pricing for one-factor short-rate models.

The series coefficients of the bond price P(tau, r) and its logarithm are
generalized polynomials in r, produced by two recursions in `series`.  The
CIR closed form (`closedform`) and a theta-scheme PDE solver (`fdsolver`)
serve as independent cross-checks; `tables` rebuilds the embedded benchmark
tables and `cli` exposes everything on the command line.
"""

from .closedform import cir_exact_log_price, cir_exact_price, cir_exact_yield
from .errors import ConfigError, DomainError, TermLimitError
from .fdsolver import (ConvergenceStudy, FDGrid, FDSolution,
                       convergence_study, default_grid, fd_price_at, fd_solve,
                       fd_solve_path)
from .genpoly import GenPoly, approx_equal, evaluate, from_text, to_text
from .model import (CIRParams, DothanParams, ShortRateModel, make_cir,
                    make_ckls, make_custom, make_dothan, parse_model_config,
                    parse_model_text)
from .series import (LOGPRICE, MAX_ORDER, PRICE, TaylorSeries,
                     eval_partial_sum, exp_compose, log_coeffs, partial_sums,
                     pde_residual_coeffs, price_coeffs, yield_curve,
                     yield_from_price)
from .tables import TABLE_IDS, TableCell, TableReport, build_table

__version__ = "0.1.0"

__all__ = [
    "CIRParams", "ConfigError", "ConvergenceStudy", "DomainError",
    "DothanParams", "FDGrid", "FDSolution", "GenPoly", "LOGPRICE",
    "MAX_ORDER", "PRICE", "ShortRateModel", "TABLE_IDS", "TaylorSeries",
    "TableCell", "TableReport", "TermLimitError", "approx_equal",
    "build_table", "cir_exact_log_price", "cir_exact_price",
    "cir_exact_yield", "convergence_study", "default_grid",
    "eval_partial_sum", "evaluate", "exp_compose", "fd_price_at", "fd_solve",
    "fd_solve_path", "from_text", "log_coeffs", "make_cir", "make_ckls",
    "make_custom", "make_dothan", "parse_model_config", "parse_model_text",
    "partial_sums", "pde_residual_coeffs", "price_coeffs", "to_text",
    "yield_curve", "yield_from_price",
]
