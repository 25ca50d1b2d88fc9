"""GLM information weights.

Each design point x contributes Fisher information proportional to
nu(eta) with eta = x'beta, where nu depends on the response family and
link.  The weight functions here are the closed forms for the supported
single-parameter exponential-family models:

=================  =====================================
family_link        nu(eta)
=================  =====================================
binary-logit       1 / (2 + e^eta + e^-eta)
binary-probit      phi(eta)^2 / (Phi(eta)(1 - Phi(eta)))
binary-cloglog     (exp(e^eta) - 1) * log(1 - exp(-e^eta))^2
binary-loglog      exp(2*eta - e^eta) / (1 - exp(-e^eta))
poisson-log        e^eta
gamma-inverse      k / eta^2
normal-identity    1 / sigma^2
=================  =====================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import log_ndtr

from .errors import (
    ConfigError,
    DimensionMismatch,
    GammaZeroEta,
    NonFiniteInput,
    NonPositiveWeight,
)

FAMILY_LINKS = (
    "binary-logit",
    "binary-probit",
    "binary-cloglog",
    "binary-loglog",
    "poisson-log",
    "gamma-inverse",
    "normal-identity",
)

# Weights below this are indistinguishable from zero for the optimality
# conditions (ratios of objective values) and are rejected outright.
WEIGHT_FLOOR = 1e-300

_LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class GlmModel:
    """A response family/link plus regression coefficients.

    Parameters
    ----------
    family_link : str
        One of ``FAMILY_LINKS``.
    beta : array_like
        Coefficient vector of length d (one entry per design column).
    shape : float, optional
        Shape parameter k > 0; required for ``gamma-inverse``.
    variance : float, optional
        Response variance sigma^2 > 0; required for ``normal-identity``.
    """

    family_link: str
    beta: np.ndarray
    shape: float | None = None
    variance: float | None = None
    d: int = field(init=False)

    def __post_init__(self):
        if self.family_link not in FAMILY_LINKS:
            raise ConfigError(
                f"unknown family_link {self.family_link!r}; "
                f"expected one of {', '.join(FAMILY_LINKS)}"
            )
        beta = np.asarray(self.beta, dtype=float)
        if beta.ndim != 1 or beta.size == 0:
            raise DimensionMismatch("beta must be a one-dimensional vector")
        if not np.all(np.isfinite(beta)):
            raise NonFiniteInput("beta contains non-finite entries")
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "d", beta.size)
        if self.family_link == "gamma-inverse":
            if self.shape is None or not (self.shape > 0):
                raise NonFiniteInput("gamma-inverse requires shape k > 0")
        if self.family_link == "normal-identity":
            if self.variance is None or not (self.variance > 0):
                raise NonFiniteInput("normal-identity requires variance > 0")


def _nu_logit(eta):
    # 1/(2 + e^eta + e^-eta) with the large exponential factored out
    t = math.exp(-abs(eta))
    return t / (1.0 + t) ** 2


def _nu_probit(eta):
    # phi^2 / (Phi * (1-Phi)) evaluated fully in log space; log_ndtr is
    # accurate in both tails
    return math.exp(-eta * eta - _LOG_2PI - log_ndtr(eta) - log_ndtr(-eta))


def _nu_cloglog(eta):
    if eta > 709.0:
        return 0.0  # u = e^eta overflows a double and nu ~ e^-u underflows
    u = math.exp(eta)
    if u == 0.0:
        return 0.0
    if u >= 30.0:
        # expm1(u)*log(1-e^-u)^2 = e^-u * (1 + O(e^-u))
        return math.exp(-u) if u < 745.0 else 0.0
    if u >= 1.0:
        log_mu = math.log1p(-math.exp(-u))
    else:
        log_mu = math.log(-math.expm1(-u))
    return math.expm1(u) * log_mu * log_mu


def _nu_loglog(eta):
    if eta > 709.0:
        return 0.0  # u = e^eta overflows a double and nu ~ u^2 e^-u underflows
    u = math.exp(eta)
    if u == 0.0:
        return 0.0
    if u >= 700.0:
        return math.exp(2.0 * eta - u) if 2.0 * eta - u > -745.0 else 0.0
    return u * u / math.expm1(u)


def nu_eval(model: GlmModel, eta: float) -> float:
    """Evaluate the information weight nu(eta) for one design point.

    Raises
    ------
    NonFiniteInput
        If eta is NaN or infinite.
    GammaZeroEta
        For gamma-inverse at eta = 0, where the mean 1/eta is undefined.
    """
    eta = float(eta)
    if not math.isfinite(eta):
        raise NonFiniteInput(f"eta must be finite, got {eta}")
    fam = model.family_link
    if fam == "binary-logit":
        return _nu_logit(eta)
    if fam == "binary-probit":
        return _nu_probit(eta)
    if fam == "binary-cloglog":
        return _nu_cloglog(eta)
    if fam == "binary-loglog":
        return _nu_loglog(eta)
    if fam == "poisson-log":
        return math.exp(eta)
    if fam == "gamma-inverse":
        if eta == 0.0:
            raise GammaZeroEta("gamma-inverse weight undefined at eta = 0")
        return model.shape / (eta * eta)
    # normal-identity
    return 1.0 / model.variance


def compute_weights(X, model: GlmModel) -> np.ndarray:
    """Per-row weights w_i = nu(x_i'beta) for a design matrix.

    For ``gamma-inverse`` the linear predictors must all share one strict
    sign (the mean 1/eta must stay positive under a fixed sign convention);
    a zero eta or mixed signs raise ``NonPositiveWeight`` with the row
    index that breaks the pattern.

    Returns
    -------
    numpy.ndarray
        Strictly positive weight vector of length m.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise DimensionMismatch("design matrix must be two-dimensional")
    if X.shape[1] != model.d:
        raise DimensionMismatch(
            f"design matrix has {X.shape[1]} columns but beta has length {model.d}"
        )
    if not np.all(np.isfinite(X)):
        raise NonFiniteInput("design matrix contains non-finite entries")
    eta = X @ model.beta

    if model.family_link == "gamma-inverse":
        for i, e in enumerate(eta):
            if e == 0.0:
                raise NonPositiveWeight(
                    f"row {i}: eta = 0 gives an undefined gamma mean", index=i
                )
        lead = math.copysign(1.0, eta[0])
        for i, e in enumerate(eta):
            if math.copysign(1.0, e) != lead:
                raise NonPositiveWeight(
                    f"row {i}: eta = {e:.6g} flips sign against the other rows; "
                    "gamma-inverse means must keep one sign",
                    index=i,
                )

    w = np.empty(len(eta))
    for i, e in enumerate(eta):
        w[i] = nu_eval(model, float(e))
        if not math.isfinite(w[i]) or w[i] < WEIGHT_FLOOR:
            raise NonPositiveWeight(
                f"row {i}: weight {w[i]:.3g} at eta = {float(e):.6g} is below "
                f"the usable floor {WEIGHT_FLOOR:g}",
                index=i,
            )
    return w
