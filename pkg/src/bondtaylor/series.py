"""Taylor coefficients of bond prices in time to maturity.

With time to maturity tau, the zero-coupon bond price P(tau, r) under a
one-factor short-rate model with time-independent drift mu(r) and squared
volatility s2(r) solves

    -P_tau + mu(r) P_r + (1/2) s2(r) P_rr - r P = 0,       P(0, r) = 1.

Writing P = sum_k c_k(r) tau^k and matching powers of tau gives the price
recursion

    c_0 = 1,
    c_{k+1} = ( mu c_k' + (1/2) s2 c_k'' - r c_k ) / (k+1).

The log-price f = ln P solves the corresponding semilinear equation, whose
series f = sum_k c_k(r) tau^k satisfies

    c_0 = 0,   c_1 = -r,
    c_{k+1} = ( mu c_k' + (1/2) s2 sum_{i=0}^{k} c_i' c_{k-i}'
                + (1/2) s2 c_k'' ) / (k+1)          for k >= 1;

the -r source term enters only at order zero, which is what anchors c_1.
Every coefficient stays a GenPoly in r, so truncation is the only
approximation made here.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log

from . import genpoly as gp
from .errors import DomainError, TermLimitError
from .genpoly import GenPoly
from .model import ShortRateModel

PRICE = "price"
LOGPRICE = "logprice"

# series beyond this order are never useful at desk precision and the
# coefficient algebra starts to crawl
MAX_ORDER = 30

_R = gp.term(1.0, 1.0)  # the polynomial r itself


@dataclass(frozen=True)
class TaylorSeries:
    target: str  # PRICE or LOGPRICE
    order: int
    coeffs: tuple[GenPoly, ...]  # indices 0..order
    model: ShortRateModel


def _check_order(order: int) -> None:
    if not isinstance(order, int) or isinstance(order, bool):
        raise ValueError(f"order must be an integer, got {order!r}")
    if order < 0 or order > MAX_ORDER:
        raise ValueError(f"order must be in [0, {MAX_ORDER}], got {order}")


def price_coeffs(model: ShortRateModel, order: int) -> TaylorSeries:
    """Coefficients c_0..c_order of the bond-price series."""
    _check_order(order)
    coeffs = [gp.const(1.0)]
    for k in range(order):
        ck = coeffs[k]
        d1 = gp.derivative(ck)
        d2 = gp.derivative(d1)
        try:
            raw = gp.add(
                gp.add(gp.mul(model.drift, d1), gp.scale(gp.mul(model.vol2, d2), 0.5)),
                gp.scale(gp.mul(_R, ck), -1.0),
            )
        except TermLimitError as exc:
            raise TermLimitError(f"price series order {k + 1}: {exc}") from None
        coeffs.append(gp.scale(raw, 1.0 / (k + 1)))
    return TaylorSeries(PRICE, order, tuple(coeffs), model)


def log_coeffs(model: ShortRateModel, order: int) -> TaylorSeries:
    """Coefficients c_0..c_order of the log-price series."""
    _check_order(order)
    coeffs = [GenPoly()]
    derivs = [GenPoly()]
    if order >= 1:
        c1 = gp.term(-1.0, 1.0)
        coeffs.append(c1)
        derivs.append(gp.derivative(c1))
    for k in range(1, order):
        conv = GenPoly()
        for i in range(k + 1):  # full range; the i=0 and i=k ends vanish only when c_0' does
            conv = gp.add(conv, gp.mul(derivs[i], derivs[k - i]))
        try:
            raw = gp.add(
                gp.mul(model.drift, derivs[k]),
                gp.scale(gp.mul(model.vol2, gp.add(conv, gp.derivative(derivs[k]))), 0.5),
            )
        except TermLimitError as exc:
            raise TermLimitError(f"log series order {k + 1}: {exc}") from None
        nxt = gp.scale(raw, 1.0 / (k + 1))
        coeffs.append(nxt)
        derivs.append(gp.derivative(nxt))
    return TaylorSeries(LOGPRICE, order, tuple(coeffs), model)


def partial_sums(s: TaylorSeries, tau: float, r: float) -> list[float]:
    """Running partial sums sum_{k<=J} c_k(r) tau^k for J = 0..order."""
    if tau < 0.0:
        raise DomainError(f"time to maturity must be nonnegative, got {tau}")
    out = []
    acc = 0.0
    tau_pow = 1.0
    for c in s.coeffs:
        acc += gp.evaluate(c, r) * tau_pow
        tau_pow *= tau
        out.append(acc)
    return out


def eval_partial_sum(s: TaylorSeries, tau: float, r: float) -> float:
    """The order-J partial sum sum_{k=0}^{J} c_k(r) tau^k at (tau, r)."""
    return partial_sums(s, tau, r)[-1]


def yield_from_price(price: float, tau: float) -> float:
    """Continuously compounded yield R = -ln(price) / tau."""
    if tau <= 0.0:
        raise DomainError(f"yield needs tau > 0, got {tau}")
    if price <= 0.0:
        raise DomainError(f"yield needs a positive price, got {price}")
    return -log(price) / tau


def yield_curve(model: ShortRateModel, order: int, r: float, taus) -> list[tuple[float, float]]:
    """Yields from the log-price series: R(tau) = -f_J(tau, r) / tau.

    Working on the log series skips the exp/log round trip; `bondtaylor yield
    --from-price` exposes the alternative route through the price series.
    """
    series = log_coeffs(model, order)
    out = []
    for tau in taus:
        if tau <= 0.0:
            raise DomainError(f"yield curve needs tau > 0, got {tau}")
        f = eval_partial_sum(series, tau, r)
        out.append((tau, -f / tau))
    return out


def exp_compose(s: TaylorSeries) -> TaylorSeries:
    """Exponentiate a log-price series termwise: b = exp(c) as formal series.

    Uses b_0 = 1, n b_n = sum_{k=1}^{n} k c_k b_{n-k}, valid because c_0 = 0.
    """
    if s.target != LOGPRICE:
        raise ValueError(f"exp_compose expects a {LOGPRICE} series, got {s.target!r}")
    b = [gp.const(1.0)]
    for n in range(1, s.order + 1):
        acc = GenPoly()
        for k in range(1, n + 1):
            acc = gp.add(acc, gp.scale(gp.mul(s.coeffs[k], b[n - k]), float(k)))
        b.append(gp.scale(acc, 1.0 / n))
    return TaylorSeries(PRICE, s.order, tuple(b), s.model)


def pde_residual_coeffs(s: TaylorSeries) -> list[GenPoly]:
    """Substitute a truncated price series into the pricing equation.

    Returns the tau^0..tau^order coefficients of
        -P_tau + mu P_r + (1/2) s2 P_rr - r P
    for P = sum_{k<=order} c_k tau^k.  For coefficients produced by
    price_coeffs everything through tau^(order-1) cancels and the tau^order
    entry is the leading truncation error.
    """
    if s.target != PRICE:
        raise ValueError(f"pde_residual_coeffs expects a {PRICE} series, got {s.target!r}")
    model = s.model
    res = []
    for k in range(s.order + 1):
        ck = s.coeffs[k]
        d1 = gp.derivative(ck)
        d2 = gp.derivative(d1)
        coeff = gp.add(
            gp.add(gp.mul(model.drift, d1), gp.scale(gp.mul(model.vol2, d2), 0.5)),
            gp.scale(gp.mul(_R, ck), -1.0),
        )
        if k < s.order:
            coeff = gp.add(coeff, gp.scale(s.coeffs[k + 1], -(k + 1.0)))
        res.append(coeff)
    return res
