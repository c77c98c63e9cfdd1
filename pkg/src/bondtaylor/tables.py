"""Benchmark tables: embedded reference values and their reproduction.

Five reference tables ship with the package and are rebuilt on demand by
``build_table``:

  cir-price        CIR bond prices, closed form vs Taylor orders 4/5/6
  cir-yield        CIR yields in percent, closed form vs Taylor orders 4/5/6
  cir-converge     CIR partial sums J=0..7 (price and log price), tau=1
  dothan-converge  Dothan partial sums J=0..7 (price and log price), tau=3
  dothan-grid      Dothan prices x100, Taylor J=3/5/7 plus an FD oracle column

The reference constants are embedded read-only; every computed cell is
compared against its reference at half an ulp of the last printed decimal
(padded by 1e-12 so a value sitting exactly on a rounding boundary cannot
flip the verdict).  Two cells carry suspected misprints and are FLAGGED:
they are reported, never failed.

Column routes worth knowing before reading the builders:

* cir-price order-J columns are exp(f_J) of the log-series partial sum f_J,
  not partial sums of the price series.  The raw price sums drift from the
  reference by up to 6e-4 at tau=5 while exp(f_J) reproduces all 30 cells,
  so the reference was evidently produced from the log route.
* cir-yield columns are R = -f_J/tau on the same log partial sums.
* dothan-grid Taylor columns are raw price-series partial sums (x100), and
  its exact column is cross-checked against the implicit FD solver since no
  tractable closed form is implemented for that model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .closedform import cir_exact_price, cir_exact_yield
from .errors import ConfigError
from .fdsolver import default_grid, fd_price_at, fd_solve_path
from .model import CIRParams, DothanParams, make_cir, make_dothan
from .series import log_coeffs, partial_sums, price_coeffs

# half an ulp of the last printed decimal, by print format
_PAD = 1e-12
TOL_6DP = 5e-7 + _PAD
TOL_5DP = 5e-6 + _PAD
TOL_4DP = 5e-5 + _PAD

TABLE_IDS = ("cir-price", "cir-yield", "cir-converge", "dothan-converge",
             "dothan-grid")


@dataclass(frozen=True)
class TableCell:
    row: str
    column: str
    computed: float
    reference: float | None
    tolerance: float
    flagged: bool = False
    note: str = ""

    @property
    def deviation(self) -> float | None:
        if self.reference is None:
            return None
        return abs(self.computed - self.reference)

    @property
    def status(self) -> str:
        if self.flagged:
            return "FLAGGED"
        dev = self.deviation
        if dev is None or dev <= self.tolerance:
            return "PASS"
        return "FAIL"


@dataclass(frozen=True)
class TableReport:
    table_id: str
    title: str
    decimals: int
    cells: tuple[TableCell, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(c.status != "FAIL" for c in self.cells)

    def counts(self) -> tuple[int, int, int]:
        """(pass, flagged, fail) cell counts."""
        statuses = [c.status for c in self.cells]
        return (statuses.count("PASS"), statuses.count("FLAGGED"),
                statuses.count("FAIL"))


_CIR = CIRParams(alpha=0.00315, beta=-0.0555, sigma=0.0894)
_CIR_R = 0.05
_CIR_TAUS = (0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0)

_CIR_PRICE_EXACT = (0.987567, 0.975273, 0.963120, 0.951115, 0.927559,
                    0.904626, 0.882334, 0.860691, 0.819367, 0.780631)
# tau=3 order-6 reference is the corrected value; the source prints 0.960691,
# an obvious slip of the leading digit (it would exceed the tau=0.25 price).
_CIR_PRICE_TAYLOR = {
    4: (0.987567, 0.975273, 0.963120, 0.951115, 0.927559,
        0.904627, 0.882336, 0.860696, 0.819382, 0.780662),
    5: (0.987567, 0.975273, 0.963120, 0.951115, 0.927559,
        0.904626, 0.882333, 0.860688, 0.819348, 0.780565),
    6: (0.987567, 0.975273, 0.963120, 0.951115, 0.927559,
        0.904626, 0.882334, 0.860691, 0.819368, 0.780638),
}

_CIR_YIELD_EXACT = (5.00425, 5.00766, 5.01024, 5.01202, 5.01328,
                    5.01167, 5.00739, 5.00065, 4.98059, 4.95306)
_CIR_YIELD_TAYLOR = {
    4: (5.00425, 5.00766, 5.01023, 5.01201, 5.01327,
        5.01163, 5.00729, 5.00046, 4.98014, 4.95227),
    5: (5.00425, 5.00766, 5.01024, 5.01202, 5.01329,
        5.01169, 5.00745, 5.00078, 4.98115, 4.95474),
    6: (5.00425, 5.00766, 5.01024, 5.01202, 5.01328,
        5.01167, 5.00739, 5.00064, 4.98054, 4.95288),
}

_CIR_CONVERGE_PRICE = (1.000000, 0.950000, 0.951062, 0.951121,
                       0.951115, 0.951115, 0.951115, 0.951115)
_CIR_CONVERGE_LOG = (0.000000, -0.050000, -0.050188, -0.050117,
                     -0.050120, -0.050120, -0.050120, -0.050120)

_DOTHAN_MU = 0.005
_DOTHAN_R = 0.035
_DOTHAN_CONVERGE_PRICE = (1.000000, 0.895000, 0.899725, 0.899721,
                          0.899715, 0.899715, 0.899715, 0.899715)
_DOTHAN_CONVERGE_LOG = (0.000000, -0.105000, -0.105788, -0.105681,
                        -0.105677, -0.105678, -0.105678, -0.105678)

_DOTHAN_GRID_TAUS = (1.0, 2.0, 3.0, 4.0, 5.0, 10.0)
_DOTHAN_GRID = {
    0.01: {3: (96.5523, 93.2082, 89.9666, 86.8260, 83.7852, 70.0312),
           5: (96.5523, 93.2082, 89.9663, 86.8251, 83.7830, 69.9977),
           7: (96.5523, 93.2082, 89.9663, 86.8251, 83.7830, 69.9982),
           "exact": (96.5523, 93.2082, 89.9663, 86.8251, 83.7830, 69.9982)},
    0.02: {3: (96.5525, 93.2099, 89.9721, 86.8391, 83.8362, 70.4396),
           5: (96.5525, 93.2098, 89.9715, 86.8370, 83.8056, 70.1530),
           7: (96.5525, 93.2098, 89.9715, 86.8370, 83.8057, 70.1551),
           "exact": (96.5525, 93.2098, 89.9715, 86.8370, 83.8057, 70.1551)},
    0.03: {3: (96.5527, 93.2115, 89.9776, 86.8521, 83.8362, 70.4396),
           5: (96.5527, 93.2113, 89.9767, 86.8491, 83.8287, 70.3112),
           7: (96.5527, 93.2113, 89.9767, 86.8491, 83.8287, 70.3151),
           "exact": (96.5527, 93.2113, 89.9767, 86.8491, 83.8287, 70.3151)},
}
# The sigma2=0.02 J=3 entries at tau=5 and tau=10 duplicate the sigma2=0.03
# row to the digit, while c_3 provably depends on sigma2.  The recursion
# reproduces the 0.03 row exactly (83.836198, 70.439583) and lands far from
# the 0.02 prints (true values 83.810677, 70.235417), so the 0.02 cells are
# the copy slips.  They are reported without a reference.
_DOTHAN_GRID_FLAGS = {(0.02, 3, 5.0), (0.02, 3, 10.0)}


def _build_cir_price() -> TableReport:
    model = make_cir(_CIR)
    series = log_coeffs(model, 6)
    cells = []
    for i, tau in enumerate(_CIR_TAUS):
        row = f"tau={tau:g}"
        cells.append(TableCell(row, "exact", cir_exact_price(_CIR, tau, _CIR_R),
                               _CIR_PRICE_EXACT[i], TOL_6DP))
        sums = partial_sums(series, tau, _CIR_R)
        for order in (4, 5, 6):
            flagged = tau == 3.0 and order == 6
            note = ("printed 0.960691, compared against corrected 0.860691"
                    if flagged else "")
            cells.append(TableCell(row, f"taylor_j{order}", math.exp(sums[order]),
                                   _CIR_PRICE_TAYLOR[order][i], TOL_6DP,
                                   flagged, note))
    return TableReport("cir-price",
                       "CIR bond prices, closed form vs exp of log partial "
                       "sums (r=0.05)", 6, tuple(cells))


def _build_cir_yield() -> TableReport:
    model = make_cir(_CIR)
    series = log_coeffs(model, 6)
    cells = []
    for i, tau in enumerate(_CIR_TAUS):
        row = f"tau={tau:g}"
        cells.append(TableCell(row, "exact",
                               100.0 * cir_exact_yield(_CIR, tau, _CIR_R),
                               _CIR_YIELD_EXACT[i], TOL_5DP))
        sums = partial_sums(series, tau, _CIR_R)
        for order in (4, 5, 6):
            cells.append(TableCell(row, f"taylor_j{order}",
                                   -100.0 * sums[order] / tau,
                                   _CIR_YIELD_TAYLOR[order][i], TOL_5DP))
    return TableReport("cir-yield",
                       "CIR yields in percent, closed form vs R = -f_J/tau "
                       "(r=0.05)", 5, tuple(cells))


def _converge_cells(model, tau, r, price_ref, log_ref):
    p_sums = partial_sums(price_coeffs(model, 7), tau, r)
    l_sums = partial_sums(log_coeffs(model, 7), tau, r)
    cells = []
    for k in range(8):
        row = f"order={k}"
        cells.append(TableCell(row, "price", p_sums[k], price_ref[k], TOL_6DP))
        cells.append(TableCell(row, "logprice", l_sums[k], log_ref[k], TOL_6DP))
    return tuple(cells)


def _build_cir_converge() -> TableReport:
    cells = _converge_cells(make_cir(_CIR), 1.0, _CIR_R,
                            _CIR_CONVERGE_PRICE, _CIR_CONVERGE_LOG)
    return TableReport("cir-converge",
                       "CIR partial sums J=0..7, tau=1, r=0.05", 6, cells)


def _build_dothan_converge() -> TableReport:
    model = make_dothan(DothanParams(_DOTHAN_MU, math.sqrt(0.02)))
    cells = _converge_cells(model, 3.0, _DOTHAN_R,
                            _DOTHAN_CONVERGE_PRICE, _DOTHAN_CONVERGE_LOG)
    return TableReport("dothan-converge",
                       "Dothan partial sums J=0..7, tau=3, r=0.035, "
                       "sigma2=0.02", 6, cells)


def _build_dothan_grid() -> TableReport:
    # all checkpoint maturities divide 10, so one march per block suffices
    grid = default_grid(_DOTHAN_R, _DOTHAN_GRID_TAUS[-1])
    cells = []
    for sigma2 in (0.01, 0.02, 0.03):
        model = make_dothan(DothanParams(_DOTHAN_MU, math.sqrt(sigma2)))
        series = price_coeffs(model, 7)
        sols = fd_solve_path(model, _DOTHAN_GRID_TAUS, grid)
        for i, tau in enumerate(_DOTHAN_GRID_TAUS):
            row = f"sigma2={sigma2:g} tau={tau:g}"
            sums = partial_sums(series, tau, _DOTHAN_R)
            for order in (3, 5, 7):
                printed = _DOTHAN_GRID[sigma2][order][i]
                if (sigma2, order, tau) in _DOTHAN_GRID_FLAGS:
                    cells.append(TableCell(
                        row, f"taylor_j{order}", 100.0 * sums[order], None,
                        TOL_4DP, flagged=True,
                        note=f"printed {printed:.4f} duplicates the "
                             "sigma2=0.03 cell; series value reported"))
                else:
                    cells.append(TableCell(row, f"taylor_j{order}",
                                           100.0 * sums[order], printed,
                                           TOL_4DP))
            fd_value = 100.0 * fd_price_at(sols[tau], _DOTHAN_R)
            cells.append(TableCell(row, "exact", fd_value,
                                   _DOTHAN_GRID[sigma2]["exact"][i], TOL_4DP))
    return TableReport("dothan-grid",
                       "Dothan bond prices x100, Taylor J=3/5/7 and FD "
                       "oracle (mu=0.005, r=0.035)", 4, tuple(cells))


_BUILDERS = {
    "cir-price": _build_cir_price,
    "cir-yield": _build_cir_yield,
    "cir-converge": _build_cir_converge,
    "dothan-converge": _build_dothan_converge,
    "dothan-grid": _build_dothan_grid,
}


def build_table(table_id: str) -> TableReport:
    """Recompute one reference table and compare cell by cell."""
    try:
        builder = _BUILDERS[table_id]
    except KeyError:
        raise ConfigError(f"unknown table id {table_id!r}; "
                          f"choose from: {', '.join(TABLE_IDS)}") from None
    return builder()
