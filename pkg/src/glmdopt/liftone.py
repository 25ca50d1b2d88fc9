"""Lift-one coordinate ascent for approximate D-optimal designs.

One round visits every coordinate in random order; each visit lifts the
coordinate to the closed-form maximum of its profile polynomial

    f_i(z) = a z(1-z)^(d-1) + b (1-z)^d,

rescaling the remaining mass proportionally.  Every ``safeguard_period``-th
round applies the single best coordinate move over all m instead of a
random sweep, so the iteration cannot stall on sweep order.  After the
improvement per round drops below ``tol`` the iterate is polished with
further best-coordinate steps accepting any strict gain, which drives it
to the coordinate-wise fixpoint where the optimality certificate holds
tightly; the result reports ``converged`` only when that certificate
passes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .certify import OptimalityCertificate, verify_optimal
from .errors import DimensionMismatch, SingularDesign
from .objective import allocation, design_matrix, lift_allocation, objective

# Coordinates outside this band use the two-evaluation coefficient
# extraction; inside it the cheaper interpolation through (p_i, f) is
# numerically safe.
_PRECISE_LO = 1e-8
_PRECISE_HI = 0.99

_POLISH_CAP = 2000


@dataclass(frozen=True)
class LiftOneOptions:
    """Tuning knobs for the optimizer.

    seed drives the per-round random coordinate order; tol is the
    relative improvement threshold below which a round counts as
    stationary.
    """

    seed: int = 0
    max_rounds: int = 1000
    tol: float = 1e-10
    safeguard_period: int = 10

    def __post_init__(self):
        if self.max_rounds < 1:
            raise DimensionMismatch("max_rounds must be at least 1")
        if not self.tol > 0:
            raise DimensionMismatch("tol must be positive")
        if self.safeguard_period < 1:
            raise DimensionMismatch("safeguard_period must be at least 1")


@dataclass(frozen=True)
class LiftOneResult:
    """Optimizer outcome.

    converged is True only when the iteration reached stationarity within
    max_rounds AND the final point passes the optimality certificate; the
    certificate itself is attached for inspection either way.
    """

    p_opt: np.ndarray
    f_opt: float
    rounds: int
    converged: bool
    certificate: OptimalityCertificate
    polish_steps: int = field(default=0)


def maximize_profile(prof) -> tuple[float, float]:
    """Closed-form maximum of f_i(z) = a z(1-z)^(d-1) + b (1-z)^d on [0,1].

    If a > b d the maximum sits at z* = (a - b d)/((a - b) d) with value
    ((d-1)/(a-b))^(d-1) (a/d)^d; otherwise it sits at z* = 0 with value b.
    The returned value is the polynomial evaluated at z*, which equals the
    closed form while staying finite for extreme coefficient scales.
    """
    a, b, d = prof.a, prof.b, prof.d
    if a > b * d:
        z = (a - b * d) / ((a - b) * d)
        return z, prof.value(z)
    return 0.0, b


def _profile_coeffs(X, w, p, i, f, d):
    """(a, b) for coordinate i, interpolating through (p_i, f) when safe."""
    pi = p[i]
    b = objective(X, w, lift_allocation(p, i, 0.0)) if pi > 0.0 else f
    a = np.nan
    if _PRECISE_LO <= pi <= _PRECISE_HI:
        one = 1.0 - pi
        a = (f - b * one**d) / (pi * one ** (d - 1))
    if not np.isfinite(a):
        a = objective(X, w, lift_allocation(p, i, 0.5)) * 2.0**d - b
    return max(a, 0.0), max(b, 0.0)


def _best_move(X, w, p, f, d, i):
    a, b = _profile_coeffs(X, w, p, i, f, d)
    if a > b * d:
        z = (a - b * d) / ((a - b) * d)
        one = 1.0 - z
        return z, a * z * one ** (d - 1) + b * one**d
    return 0.0, b


def lift_one_optimize(X, w, p0=None, opts: LiftOneOptions | None = None) -> LiftOneResult:
    """Maximize f(p) = det(X' diag(p*w) X) over the simplex.

    Parameters
    ----------
    X : array_like
        m x d design matrix of rank d.
    w : array_like
        Strictly positive weight vector of length m.
    p0 : array_like, optional
        Starting allocation; defaults to uniform, which has f > 0
        whenever X has rank d.
    opts : LiftOneOptions, optional

    Raises
    ------
    SingularDesign
        If f(p0) = 0.
    """
    X = design_matrix(X)
    m, d = X.shape
    w = np.asarray(w, dtype=float)
    if len(w) != m:
        raise DimensionMismatch(f"{len(w)} weights for {m} design rows")
    opts = opts or LiftOneOptions()
    p = np.full(m, 1.0 / m) if p0 is None else allocation(p0, m)

    f = objective(X, w, p)
    if f <= 0.0:
        raise SingularDesign("starting allocation has a singular information matrix")

    rng = np.random.default_rng(opts.seed)
    accept = 1.0 + opts.tol
    stationary = False
    rounds = 0
    for rnd in range(1, opts.max_rounds + 1):
        rounds = rnd
        if rnd % opts.safeguard_period == 0:
            moves = [_best_move(X, w, p, f, d, i) for i in range(m)]
            best = max(range(m), key=lambda i: moves[i][1])
            z, val = moves[best]
            if not val > f * accept:
                stationary = True
                break
            p = lift_allocation(p, best, z)
            f = val
        else:
            improved = False
            for i in rng.permutation(m):
                z, val = _best_move(X, w, p, f, d, i)
                if val > f * accept:
                    p = lift_allocation(p, i, z)
                    f = val
                    improved = True
            if not improved:
                stationary = True
                break

    polish_steps = 0
    if stationary:
        for _ in range(min(200 * m, _POLISH_CAP)):
            moves = [_best_move(X, w, p, f, d, i) for i in range(m)]
            best = max(range(m), key=lambda i: moves[i][1])
            z, val = moves[best]
            if not val > f:
                break
            q = lift_allocation(p, best, z)
            if np.array_equal(q, p):
                break
            p = q
            f = val
            polish_steps += 1

    f_opt = objective(X, w, p)
    certificate = verify_optimal(X, w, p)
    return LiftOneResult(
        p_opt=p,
        f_opt=f_opt,
        rounds=rounds,
        converged=stationary and certificate.optimal,
        certificate=certificate,
        polish_steps=polish_steps,
    )
