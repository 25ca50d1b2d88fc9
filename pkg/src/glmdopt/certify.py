"""Optimality certificates for approximate designs.

An allocation p with f(p) > 0 is D-optimal if and only if for every
coordinate i either

  (i)  p_i = 0 and f_i(1/2) <= (d+1)/2^d * f(p), or
  (ii) 0 < p_i <= 1/d and f_i(0) = (1 - p_i d)/(1 - p_i)^d * f(p),

where f_i(z) is the objective along the lift of coordinate i.  A
saturated design (exactly d support points at mass 1/d each) admits a
cheaper test on d x d determinants, implemented by ``check_saturated``.

Both checks evaluate the objective directly on perturbed allocations, so
they are independent of the profile algebra used by the optimizers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, SingularDesign, SingularSupport
from .objective import (
    MASS_ATOL,
    allocation,
    design_matrix,
    lift_allocation,
    objective,
)

DEFAULT_TOL = 1e-7


@dataclass(frozen=True)
class PointCheck:
    """Per-coordinate verdict of the equivalence conditions.

    lhs and rhs are the two sides of the applicable condition: the lifted
    objective value against its bound for the zero-mass case, or the two
    sides of the equality for the positive-mass case.  When a positive
    mass exceeds 1/d the condition fails outright without evaluating the
    objective, and lhs/rhs record the mass against the 1/d bound instead.
    """

    index: int
    case: str  # "zero-mass" or "positive-mass"
    lhs: float
    rhs: float
    passed: bool
    note: str = ""


@dataclass(frozen=True)
class OptimalityCertificate:
    optimal: bool
    per_point: tuple[PointCheck, ...]
    tolerance: float

    def __post_init__(self):
        agg = all(pc.passed for pc in self.per_point)
        if self.optimal != agg:
            raise SingularDesign("certificate verdict out of sync with points")


@dataclass(frozen=True)
class SaturatedPoint:
    """One non-support row's inequality check: lhs <= rhs with margin = rhs - lhs."""

    index: int
    lhs: float
    rhs: float
    margin: float
    passed: bool


def verify_optimal(X, w, p, tol: float = DEFAULT_TOL) -> OptimalityCertificate:
    """Check the D-optimality conditions for allocation p.

    Masses at or below 1e-12 are clamped to zero before checking (noted
    per point); the equality condition is accepted within tol * f(p), and
    the 1/d mass bound carries the same tol as slack since a converged
    saturated-type optimum sits at 1/d plus float drift.

    Raises
    ------
    SingularDesign
        If f(p) = 0.
    """
    X = design_matrix(X)
    m, d = X.shape
    w = np.asarray(w, dtype=float)
    if len(w) != m:
        raise DimensionMismatch(f"{len(w)} weights for {m} design rows")
    p = allocation(p, m)
    f = objective(X, w, p)
    if f <= 0.0:
        raise SingularDesign("cannot certify a design with f(p) = 0")

    slack = tol * f
    bound_zero = (d + 1.0) / 2.0**d * f
    checks = []
    for i in range(m):
        note = ""
        pi = float(p[i])
        if pi <= MASS_ATOL:
            if pi > 0.0:
                note = f"mass {pi:.3g} clamped to zero"
                pc = lift_allocation(p, i, 0.0)
            else:
                pc = p
            lhs = objective(X, w, lift_allocation(pc, i, 0.5))
            checks.append(
                PointCheck(i, "zero-mass", lhs, bound_zero, lhs <= bound_zero + slack, note)
            )
        elif pi > 1.0 / d + tol:
            checks.append(
                PointCheck(
                    i, "positive-mass", pi, 1.0 / d, False,
                    "mass exceeds 1/d, which rules out optimality",
                )
            )
        else:
            lhs = objective(X, w, lift_allocation(p, i, 0.0))
            rhs = (1.0 - pi * d) / (1.0 - pi) ** d * f
            checks.append(
                PointCheck(i, "positive-mass", lhs, rhs, abs(lhs - rhs) <= slack, note)
            )
    per_point = tuple(checks)
    return OptimalityCertificate(
        optimal=all(pc.passed for pc in per_point),
        per_point=per_point,
        tolerance=tol,
    )


def _subset_det(X, rows) -> float:
    return float(np.linalg.det(X[list(rows)]))


def check_saturated(X, w, support) -> tuple[bool, tuple[SaturatedPoint, ...]]:
    """Certify the saturated design with mass 1/d on the given support.

    The design is D-optimal if and only if for every row i outside the
    support I,

        sum over j in I of det(X[{i} u I \\ {j}])^2 / w_j
            <= det(X[I])^2 / w_i.

    Returns the verdict plus per-row margins.

    Raises
    ------
    SingularSupport
        If det(X[I]) = 0 (such a saturated design cannot be optimal).
    """
    X = design_matrix(X)
    m, d = X.shape
    w = np.asarray(w, dtype=float)
    if len(w) != m:
        raise DimensionMismatch(f"{len(w)} weights for {m} design rows")
    support = sorted(int(i) for i in support)
    if len(set(support)) != d:
        raise DimensionMismatch(
            f"support must hold {d} distinct indices, got {support}"
        )
    if any(i < 0 or i >= m for i in support):
        raise DimensionMismatch(f"support index outside 0..{m - 1}: {support}")

    det_I = _subset_det(X, support)
    # Hadamard-scaled singularity threshold: an exactly dependent subset
    # shows up as a determinant at roundoff level relative to row norms.
    hadamard = float(np.prod(np.linalg.norm(X[support], axis=1)))
    if abs(det_I) <= 1e-12 * max(hadamard, 1.0):
        raise SingularSupport(
            f"support {support} has a singular design submatrix"
        )

    details = []
    verdict = True
    for i in range(m):
        if i in support:
            continue
        lhs = 0.0
        for pos, j in enumerate(support):
            rows = support[:pos] + [i] + support[pos + 1:]
            dj = _subset_det(X, rows)
            lhs += dj * dj / w[j]
        rhs = det_I * det_I / w[i]
        margin = rhs - lhs
        ok = lhs <= rhs
        verdict = verdict and ok
        details.append(SaturatedPoint(i, lhs, rhs, margin, ok))
    return verdict, tuple(details)
