import math

import pytest

from bondtaylor import genpoly as gp
from bondtaylor.closedform import (cir_exact_log_price, cir_exact_price,
                                   cir_exact_yield, cir_psi)
from bondtaylor.errors import DomainError
from bondtaylor.fdsolver import FDGrid, fd_price_at, fd_solve
from bondtaylor.model import CIRParams, make_cir
from bondtaylor.series import log_coeffs, yield_from_price

TOL6 = 5e-7 + 1e-12

EXACT_PRICE_CELLS = {0.25: 0.987567, 1.0: 0.951115, 5.0: 0.780631}


def test_reference_price_cells(cir_params):
    for tau, ref in EXACT_PRICE_CELLS.items():
        assert abs(cir_exact_price(cir_params, tau, 0.05) - ref) <= TOL6


def test_tau_zero_is_par(cir_params):
    for r in (0.0, 0.05, 0.2):
        assert cir_exact_price(cir_params, 0.0, r) == 1.0


def test_reference_yield_cells(cir_params):
    assert abs(100 * cir_exact_yield(cir_params, 1.0, 0.05) - 5.01202) <= 5e-6 + 1e-12
    assert abs(100 * cir_exact_yield(cir_params, 0.25, 0.05) - 5.00425) <= 5e-6 + 1e-12


def test_yield_composition(cir_params):
    price = cir_exact_price(cir_params, 2.0, 0.05)
    assert cir_exact_yield(cir_params, 2.0, 0.05) == pytest.approx(
        yield_from_price(price, 2.0), abs=1e-14)


def test_psi_dominates_beta():
    for a, b, s in ((0.00315, -0.0555, 0.0894), (0.0, 0.3, 0.0), (1.0, -2.0, 0.5)):
        assert cir_psi(CIRParams(a, b, s)) >= abs(b)


def test_sigma_zero_beta_zero_limit():
    p = CIRParams(alpha=0.01, beta=0.0, sigma=0.0)
    for tau in (0.5, 1.0, 3.0):
        want = math.exp(-0.04 * tau - 0.01 * tau * tau / 2)
        assert cir_exact_price(p, tau, 0.04) == pytest.approx(want, abs=1e-15)


def test_sigma_zero_general_limit():
    # deterministic rate r(t) = e^{bt}(r + a/b) - a/b; price = exp(-integral)
    a, b, r = 0.02, -0.5, 0.06
    p = CIRParams(alpha=a, beta=b, sigma=0.0)
    for tau in (0.5, 2.0, 7.0):
        integral = (r + a / b) * (math.exp(b * tau) - 1.0) / b - a * tau / b
        assert cir_exact_log_price(p, tau, r) == pytest.approx(-integral,
                                                               abs=1e-12)


def test_sigma_to_zero_continuity():
    # the sigma branch differs from the deterministic limit by O(sigma^2);
    # much smaller sigma is pointless because 2*alpha/sigma^2 amplifies
    # rounding of the log-A bracket
    p0 = CIRParams(0.00315, -0.0555, 0.0)
    p1 = CIRParams(0.00315, -0.0555, 1e-4)
    assert cir_exact_log_price(p1, 2.0, 0.05) == pytest.approx(
        cir_exact_log_price(p0, 2.0, 0.05), abs=1e-6)


def test_monotone_in_r_and_tau(cir_params):
    rs = [0.01 + 0.01 * k for k in range(20)]
    prices = [cir_exact_price(cir_params, 2.0, r) for r in rs]
    assert all(a > b for a, b in zip(prices, prices[1:]))
    taus = [0.25 * k for k in range(1, 21)]
    curve = [cir_exact_price(cir_params, t, 0.05) for t in taus]
    assert all(a > b for a, b in zip(curve, curve[1:]))
    assert all(0.0 < v <= 1.0 for v in curve)


def test_alpha_zero_beta_zero_vs_fd():
    # 2*alpha/sigma^2 = 0 makes the A factor 1, so log P is linear in r
    p = CIRParams(alpha=0.0, beta=0.0, sigma=0.0894)
    assert cir_exact_log_price(p, 1.5, 0.0) == 0.0
    model = make_cir(p)
    sol = fd_solve(model, 1.0, FDGrid(r_max=0.5, n_r=2000, n_t=1000))
    exact = cir_exact_price(p, 1.0, 0.05)
    assert abs(fd_price_at(sol, 0.05) - exact) <= 1e-5


@pytest.mark.parametrize("order", [1, 2])
def test_taylor_agreement_order(cir_params, cir_model, order):
    # |f_J(tau) - log P(tau)| / tau^{J+1} must stay bounded as tau -> 0,
    # with the limit |c_{J+1}(r)|
    r = 0.05
    series = log_coeffs(cir_model, order + 1)
    limit = abs(gp.evaluate(series.coeffs[order + 1], r))
    ratios = []
    for k in range(3, 11):
        tau = 2.0 ** -k
        f = sum(gp.evaluate(series.coeffs[j], r) * tau ** j
                for j in range(order + 1))
        err = abs(f - cir_exact_log_price(cir_params, tau, r))
        ratios.append(err / tau ** (order + 1))
    assert max(ratios) <= 2.0 * limit
    assert ratios[-1] == pytest.approx(limit, rel=0.1)


def test_domain_errors(cir_params):
    with pytest.raises(DomainError):
        cir_exact_price(cir_params, -1.0, 0.05)
    with pytest.raises(DomainError):
        cir_exact_price(cir_params, 1.0, -0.01)
    with pytest.raises(DomainError):
        cir_exact_price(cir_params, math.nan, 0.05)
    with pytest.raises(DomainError):
        cir_exact_yield(cir_params, 0.0, 0.05)
