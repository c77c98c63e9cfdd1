"""Short-rate model descriptions.

A model is the pair of coefficient functions of the pricing equation: the
drift mu(r) and the squared volatility vol2(r) = sigma(r)^2, both stored as
GenPoly.  Only vol2 is ever kept; no operation needs sigma itself, and storing
the square keeps constant-elasticity exponents exact (2*gamma instead of a
rounded sqrt round trip).

Presets:
    cir     mu = alpha + beta*r      vol2 = sigma^2 * r
    dothan  mu = mu_d * r            vol2 = sigma^2 * r^2
    ckls    mu = alpha + beta*r      vol2 = sigma^2 * r^(2*gamma)

Config files are line-based "key = value" with '#' comments, e.g.

    model = cir
    alpha = 0.00315
    beta = -0.0555
    sigma = 0.0894

Custom models give term lists in the GenPoly text format:

    model = custom
    drift_terms = 0.00315:0, -0.0555:1
    vol2_terms = 0.00799236:1
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from . import genpoly as gp
from .errors import ConfigError, DomainError
from .genpoly import GenPoly

# vol2 nonnegativity is checked by sampling this many points on (0, r_check]
_VOL2_SAMPLES = 1000
# slack for float noise when an exactly-nonnegative vol2 is evaluated in
# expanded form near one of its roots
_VOL2_SLACK = -1e-12


@dataclass(frozen=True)
class CIRParams:
    alpha: float
    beta: float
    sigma: float

    def __post_init__(self) -> None:
        if self.sigma < 0.0:
            raise ValueError(f"sigma must be nonnegative, got {self.sigma}")


@dataclass(frozen=True)
class DothanParams:
    mu: float
    sigma: float

    def __post_init__(self) -> None:
        if self.sigma < 0.0:
            raise ValueError(f"sigma must be nonnegative, got {self.sigma}")


@dataclass(frozen=True)
class ShortRateModel:
    name: str
    drift: GenPoly
    vol2: GenPoly


def check_vol2_nonnegative(vol2: GenPoly, r_check: float = 1.0) -> None:
    """Sample vol2 on (0, r_check] and reject if any value is negative."""
    if r_check <= 0.0:
        raise ValueError(f"r_check must be positive, got {r_check}")
    for i in range(1, _VOL2_SAMPLES + 1):
        r = r_check * i / _VOL2_SAMPLES
        if gp.evaluate(vol2, r) < _VOL2_SLACK:
            raise DomainError(f"vol2 is negative at r={r:.6g}")


def make_cir(p: CIRParams) -> ShortRateModel:
    drift = gp.canonicalize([(p.alpha, 0.0), (p.beta, 1.0)])
    vol2 = gp.canonicalize([(p.sigma * p.sigma, 1.0)])
    return ShortRateModel("cir", drift, vol2)


def make_dothan(p: DothanParams) -> ShortRateModel:
    drift = gp.canonicalize([(p.mu, 1.0)])
    vol2 = gp.canonicalize([(p.sigma * p.sigma, 2.0)])
    return ShortRateModel("dothan", drift, vol2)


def make_ckls(alpha: float, beta: float, sigma: float, gamma: float) -> ShortRateModel:
    if sigma < 0.0:
        raise ValueError(f"sigma must be nonnegative, got {sigma}")
    drift = gp.canonicalize([(alpha, 0.0), (beta, 1.0)])
    vol2 = gp.canonicalize([(sigma * sigma, 2.0 * gamma)])
    return ShortRateModel("ckls", drift, vol2)


def make_custom(drift_terms, vol2_terms, name: str = "custom", r_check: float = 1.0) -> ShortRateModel:
    """Build a model from raw (coeff, exponent) term lists.

    vol2 must be nonnegative on (0, r_check]; this is enforced by sampling.
    """
    drift = gp.canonicalize(list(drift_terms))
    vol2 = gp.canonicalize(list(vol2_terms))
    check_vol2_nonnegative(vol2, r_check)
    return ShortRateModel(name, drift, vol2)


_REQUIRED_KEYS = {
    "cir": ("alpha", "beta", "sigma"),
    "dothan": ("mu", "sigma2"),
    "ckls": ("alpha", "beta", "sigma", "gamma"),
    "custom": ("drift_terms", "vol2_terms"),
}


def _parse_float(key: str, value: str, lineno: int) -> float:
    try:
        x = float(value)
    except ValueError:
        raise ConfigError(f"line {lineno}: value for {key!r} is not a number: {value!r}") from None
    if not math.isfinite(x):
        raise ConfigError(f"line {lineno}: value for {key!r} must be finite, got {value!r}")
    return x


def parse_model_text(text: str) -> ShortRateModel:
    """Parse a model config given as a string.  See the module docstring for the format."""
    entries: dict[str, tuple[str, int]] = {}
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {rawline.strip()!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in entries:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = (value, lineno)

    if "model" not in entries:
        raise ConfigError("missing required key 'model'")
    kind, model_line = entries.pop("model")
    if kind not in _REQUIRED_KEYS:
        raise ConfigError(
            f"line {model_line}: unknown model {kind!r}; expected one of cir, dothan, ckls, custom"
        )
    needed = _REQUIRED_KEYS[kind]
    for key in needed:
        if key not in entries:
            raise ConfigError(f"missing required key {key!r} for model {kind!r}")
    for key in sorted(set(entries) - set(needed)):
        raise ConfigError(f"line {entries[key][1]}: unknown key {key!r} for model {kind!r}")

    if kind == "cir":
        alpha = _parse_float("alpha", *entries["alpha"])
        beta = _parse_float("beta", *entries["beta"])
        sigma = _parse_float("sigma", *entries["sigma"])
        if sigma < 0.0:
            raise ConfigError(f"line {entries['sigma'][1]}: sigma must be nonnegative")
        return make_cir(CIRParams(alpha, beta, sigma))
    if kind == "dothan":
        mu = _parse_float("mu", *entries["mu"])
        sigma2 = _parse_float("sigma2", *entries["sigma2"])
        if sigma2 < 0.0:
            raise ConfigError(f"line {entries['sigma2'][1]}: sigma2 must be nonnegative")
        return make_dothan(DothanParams(mu, math.sqrt(sigma2)))
    if kind == "ckls":
        alpha = _parse_float("alpha", *entries["alpha"])
        beta = _parse_float("beta", *entries["beta"])
        sigma = _parse_float("sigma", *entries["sigma"])
        gamma = _parse_float("gamma", *entries["gamma"])
        if sigma < 0.0:
            raise ConfigError(f"line {entries['sigma'][1]}: sigma must be nonnegative")
        return make_ckls(alpha, beta, sigma, gamma)

    # custom
    def _terms(key: str) -> GenPoly:
        value, lineno = entries[key]
        try:
            return gp.from_text(value)
        except DomainError as exc:
            raise ConfigError(f"line {lineno}: bad {key}: {exc}") from None

    drift = _terms("drift_terms")
    vol2 = _terms("vol2_terms")
    try:
        check_vol2_nonnegative(vol2)
    except DomainError as exc:
        raise ConfigError(f"line {entries['vol2_terms'][1]}: {exc}") from None
    return ShortRateModel("custom", drift, vol2)


def parse_model_config(path) -> ShortRateModel:
    """Read and parse a model config file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read model config {path}: {exc}") from None
    return parse_model_text(text)
