"""Theta-scheme finite differences for the pricing equation.

Marches P_tau = mu(r) P_r + (1/2) s2(r) P_rr - r P from P(0, .) = 1 on the
uniform grid r_j = j h, j = 0..n_r, h = r_max / n_r, with time step
dtau = tau_final / n_t:

    (I - theta dtau L) P^{n+1} = (I + (1 - theta) dtau L) P^n.

theta = 0.5 is Crank-Nicolson, theta = 1 implicit Euler.  The operator is
frozen in time, so both band matrices are assembled once and each step is one
tridiagonal solve.

Boundaries:
  * r = 0.  The equation degenerates there for the models of interest
    (s2(0) = 0, mu(0) >= 0, and the reaction term -r P vanishes), so the row
    imposes the PDE's own limit -P_tau + mu(0) P_r = 0 with a first-order
    one-sided difference.  When mu(0) = 0 the node decouples and P(tau, 0)
    stays at 1, which is the exact degenerate solution.
  * r = r_max.  Truncation boundary.  Default is the linearity condition
    P_rr = 0 with a one-sided first derivative; "dirichlet0" clamps P to 0
    instead, for cross-checking the truncation error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .errors import DomainError
from .genpoly import GenPoly
from .model import ShortRateModel

UPPER_BOUNDARIES = ("linearity", "dirichlet0")


@dataclass(frozen=True)
class FDGrid:
    r_max: float
    n_r: int
    n_t: int
    theta: float = 0.5

    def __post_init__(self) -> None:
        if not (math.isfinite(self.r_max) and self.r_max > 0.0):
            raise ValueError(f"r_max must be positive, got {self.r_max}")
        if self.n_r < 3:
            raise ValueError(f"n_r must be at least 3, got {self.n_r}")
        if self.n_t < 1:
            raise ValueError(f"n_t must be at least 1, got {self.n_t}")
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError(f"theta must lie in [0, 1], got {self.theta}")

    @property
    def h(self) -> float:
        return self.r_max / self.n_r


@dataclass(frozen=True)
class FDSolution:
    grid: FDGrid
    tau_final: float
    values: np.ndarray  # P(tau_final, r_j), j = 0..n_r


def default_grid(r_query: float, tau_final: float, theta: float = 0.5) -> FDGrid:
    """Grid sized so desk-scale problems resolve to ~1e-5: r_max covers 10x the
    query rate (at least 0.5), 2000 space cells, 1000 steps per unit maturity
    capped at 20000."""
    r_max = max(10.0 * r_query, 0.5)
    n_t = max(1, min(int(round(1000.0 * tau_final)), 20000))
    return FDGrid(r_max=r_max, n_r=2000, n_t=n_t, theta=theta)


def _eval_profile(poly: GenPoly, r_nodes: np.ndarray) -> np.ndarray:
    """Evaluate a GenPoly on the grid; r = 0 takes the limit 0**p = 0 for p > 0."""
    out = np.zeros(len(r_nodes))
    for c, p in poly.terms:
        if p < 0.0:
            raise DomainError(f"exponent {p} cannot be evaluated at the r=0 boundary node")
        out += c * np.power(r_nodes, p)
    return out


def _operator_bands(model: ShortRateModel, grid: FDGrid, upper_boundary: str):
    """Bands (sub, dia, sup) of the spatial operator L."""
    n = grid.n_r + 1
    h = grid.h
    r_nodes = np.linspace(0.0, grid.r_max, n)
    mu = _eval_profile(model.drift, r_nodes)
    s2 = _eval_profile(model.vol2, r_nodes)

    sub = np.zeros(n - 1)
    dia = np.zeros(n)
    sup = np.zeros(n - 1)

    diff = 0.5 * s2[1:-1] / (h * h)
    adv = mu[1:-1] / (2.0 * h)
    sub[: n - 2] = diff - adv          # couples node j to j-1
    dia[1:-1] = -2.0 * diff - r_nodes[1:-1]
    sup[1:] = diff + adv               # couples node j to j+1

    # r = 0: degenerate row, one-sided first derivative, no reaction term
    dia[0] = -mu[0] / h
    sup[0] = mu[0] / h

    if upper_boundary == "linearity":
        # r = r_max: P_rr = 0, one-sided first derivative
        sub[n - 2] = -mu[-1] / h
        dia[-1] = mu[-1] / h - r_nodes[-1]
    elif upper_boundary == "dirichlet0":
        sub[n - 2] = 0.0
        dia[-1] = 0.0  # row handled explicitly in the march
    else:
        raise ValueError(f"unknown upper boundary {upper_boundary!r}; expected one of {UPPER_BOUNDARIES}")
    return sub, dia, sup


def _march(model: ShortRateModel, tau_final: float, grid: FDGrid, upper_boundary: str,
           checkpoints: dict[int, float] | None = None):
    """Run the time march; optionally record profiles at given step indices."""
    n = grid.n_r + 1
    dtau = tau_final / grid.n_t
    sub, dia, sup = _operator_bands(model, grid, upper_boundary)

    th = grid.theta
    # implicit matrix I - theta dtau L in solve_banded layout
    ab = np.zeros((3, n))
    ab[0, 1:] = -th * dtau * sup
    ab[1, :] = 1.0 - th * dtau * dia
    ab[2, :-1] = -th * dtau * sub
    # explicit bands I + (1-theta) dtau L
    ex_sub = (1.0 - th) * dtau * sub
    ex_dia = 1.0 + (1.0 - th) * dtau * dia
    ex_sup = (1.0 - th) * dtau * sup

    clamp_top = upper_boundary == "dirichlet0"
    values = np.ones(n)
    recorded: dict[int, np.ndarray] = {}
    if checkpoints and 0 in checkpoints:
        recorded[0] = values.copy()
    for step in range(1, grid.n_t + 1):
        rhs = ex_dia * values
        rhs[:-1] += ex_sup * values[1:]
        rhs[1:] += ex_sub * values[:-1]
        if clamp_top:
            rhs[-1] = 0.0
            ab[1, -1] = 1.0
        try:
            values = solve_banded((1, 1), ab, rhs, check_finite=False)
        except np.linalg.LinAlgError as exc:
            raise DomainError(f"tridiagonal solve failed at step {step}: {exc}") from None
        if not np.isfinite(values).all():
            raise DomainError(f"non-finite values at step {step} of {grid.n_t}")
        if checkpoints and step in checkpoints:
            recorded[step] = values.copy()
    return values, recorded


def fd_solve(model: ShortRateModel, tau_final: float, grid: FDGrid,
             upper_boundary: str = "linearity") -> FDSolution:
    """Solve up to tau_final and return the final profile."""
    if not (math.isfinite(tau_final) and tau_final >= 0.0):
        raise DomainError(f"tau_final must be nonnegative and finite, got {tau_final!r}")
    if tau_final == 0.0:
        return FDSolution(grid, 0.0, np.ones(grid.n_r + 1))
    values, _ = _march(model, tau_final, grid, upper_boundary)
    return FDSolution(grid, tau_final, values)


def fd_solve_path(model: ShortRateModel, taus, grid: FDGrid,
                  upper_boundary: str = "linearity") -> dict[float, FDSolution]:
    """One march to max(taus), recording profiles at each requested maturity.

    Each tau must land on a step boundary (tau / dtau within 1e-9 of an
    integer), so the recorded profiles equal what single solves with the same
    dtau would produce.
    """
    taus = sorted(set(float(t) for t in taus))
    if not taus:
        return {}
    if taus[0] <= 0.0:
        raise DomainError(f"checkpoint maturities must be positive, got {taus[0]}")
    tau_final = taus[-1]
    dtau = tau_final / grid.n_t
    checkpoints: dict[int, float] = {}
    for tau in taus:
        steps = tau / dtau
        step = round(steps)
        if abs(steps - step) > 1e-9:
            raise DomainError(f"tau={tau} does not align with dtau={dtau}")
        checkpoints[step] = tau
    _, recorded = _march(model, tau_final, grid, upper_boundary, checkpoints)
    return {checkpoints[step]: FDSolution(grid, checkpoints[step], profile)
            for step, profile in recorded.items()}


def fd_price_at(sol: FDSolution, r: float) -> float:
    """Linear interpolation of the solved profile at the rate r."""
    if not (0.0 <= r <= sol.grid.r_max):
        raise DomainError(f"r={r} outside the grid [0, {sol.grid.r_max}]")
    x = r / sol.grid.h
    j = int(x)
    if j >= sol.grid.n_r:
        return float(sol.values[-1])
    w = x - j
    return float((1.0 - w) * sol.values[j] + w * sol.values[j + 1])


@dataclass(frozen=True)
class ConvergenceRow:
    h: float
    dtau: float
    value: float
    error_vs_richardson: float


@dataclass(frozen=True)
class ConvergenceStudy:
    rows: tuple[ConvergenceRow, ...]
    diffs: tuple[float, ...]   # |u_{k+1} - u_k|
    orders: tuple[float, ...]  # log2(d_k / d_{k+1})


def convergence_study(model: ShortRateModel, tau: float, r: float, base: FDGrid,
                      levels: int) -> ConvergenceStudy:
    """Halve h and dtau `levels-1` times and report the empirical order.

    The reference value is a Richardson extrapolation from the two finest
    grids, using the last order estimate (falling back on the scheme's formal
    order when the differences are already at round-off).
    """
    if levels < 2:
        raise ValueError(f"need at least 2 levels, got {levels}")
    values, hs, dts = [], [], []
    for i in range(levels):
        grid = FDGrid(base.r_max, base.n_r * 2 ** i, base.n_t * 2 ** i, base.theta)
        sol = fd_solve(model, tau, grid)
        values.append(fd_price_at(sol, r))
        hs.append(grid.h)
        dts.append(tau / grid.n_t)

    diffs = tuple(abs(values[i + 1] - values[i]) for i in range(levels - 1))
    orders = tuple(
        math.log2(diffs[i] / diffs[i + 1]) if diffs[i] > 0.0 and diffs[i + 1] > 0.0 else math.nan
        for i in range(levels - 2)
    )
    p_ref = next((p for p in reversed(orders) if math.isfinite(p) and p > 0.1), None)
    if p_ref is None:
        p_ref = 2.0 if base.theta == 0.5 else 1.0
    if levels >= 2 and diffs[-1] > 0.0:
        reference = values[-1] + (values[-1] - values[-2]) / (2.0 ** p_ref - 1.0)
    else:
        reference = values[-1]
    rows = tuple(
        ConvergenceRow(hs[i], dts[i], values[i], abs(values[i] - reference))
        for i in range(levels)
    )
    return ConvergenceStudy(rows, diffs, orders)
