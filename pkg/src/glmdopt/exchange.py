"""Pairwise exchange optimization of exact designs.

For an integer allocation n with fixed total, moving z units onto point i
and s - z onto point j (s = n_i + n_j) traces a concave quadratic

    f_ij(z) = A z(s - z) + B z + C (s - z) + D,

whose integer maximum has a closed form.  A pass visits all C(m,2) pairs
in random order and applies every improving exchange; the algorithm
terminates when a full pass changes nothing.  Exact-design exchange has
no global-optimality guarantee, so ``optimize_exact`` multi-starts it and
keeps the best allocation found.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DesignError, DimensionMismatch, EmptyPair, SingularDesign
from .liftone import LiftOneOptions, lift_one_optimize
from .objective import allocation, design_matrix, integer_allocation, objective

_ACCEPT = 1.0 + 1e-12


@dataclass(frozen=True)
class PairProfile:
    """Quadratic coefficients for redistributing s units within one pair."""

    A: float
    B: float
    C: float
    D: float
    s: int


def pair_profile(X, w, n, i: int, j: int) -> PairProfile:
    """Fit f_ij(z) = A z(s-z) + B z + C (s-z) + D from four objective values.

    D is the objective with both points emptied; B and C come from the
    endpoints z = s and z = 0; A comes from the midpoint s/2 (a fractional
    allocation, which is fine: f is a polynomial in z).

    Raises
    ------
    EmptyPair
        If n_i + n_j = 0 (the caller should skip such pairs).
    """
    X = np.asarray(X, dtype=float)
    w = np.asarray(w, dtype=float)
    n = np.asarray(n, dtype=float)
    if i == j:
        raise DimensionMismatch("pair indices must differ")
    s = float(n[i] + n[j])
    if s <= 0:
        raise EmptyPair(f"pair ({i}, {j}) holds no units")

    base = n.copy()
    base[i] = 0.0
    base[j] = 0.0
    D = objective(X, w, base)

    def f_ij(z):
        base[i] = z
        base[j] = s - z
        val = objective(X, w, base)
        base[i] = 0.0
        base[j] = 0.0
        return val

    f0 = f_ij(0.0)
    fs = f_ij(s)
    fh = f_ij(s / 2.0)
    C = max((f0 - D) / s, 0.0)
    B = max((fs - D) / s, 0.0)
    A = (2.0 / (s * s)) * (2.0 * fh - f0 - fs)
    return PairProfile(A=A, B=B, C=C, D=max(D, 0.0), s=int(s))


def maximize_pair(prof: PairProfile, current: int | None = None) -> tuple[int, float]:
    """Integer argmax of the pair quadratic over z in {0, ..., s}.

    The unconstrained maximum sits at delta = (sA + B - C)/(2A); the
    integer maximum is the closest integer, clamped to [0, s].  When two
    integers are equidistant the one closer to ``current`` wins, then the
    smaller.  Requires A > 0 (guaranteed whenever f(n) > 0 and the pair's
    rows are not proportional).
    """
    A, B, C, D, s = prof.A, prof.B, prof.C, prof.D, prof.s
    if not (A > 0 and B >= 0 and C >= 0 and D >= 0 and s > 0):
        raise DesignError(
            f"maximize_pair needs A > 0, B,C,D >= 0, s > 0; got {prof}"
        )
    delta = (s * A + B - C) / (2.0 * A)
    if delta < 0:
        return 0, s * C + D
    if delta > s:
        return s, s * B + D

    lo = int(np.floor(delta))
    cands = [z for z in (lo, lo + 1) if 0 <= z <= s]
    best = None
    for z in cands:
        dist = abs(delta - z)
        churn = abs(z - current) if current is not None else z
        key = (dist, churn, z)
        if best is None or key < best[0]:
            best = (key, z)
    z = best[1]
    return z, s * C + D + (s * A + B - C) * z - A * z * z


def exchange_optimize(X, w, n0, seed=0) -> np.ndarray:
    """Maximize f(n) over integer allocations with Sum n_i fixed.

    Repeated passes over all pairs in a seeded random order; each pair's
    units are redistributed to the quadratic's integer maximum whenever
    that strictly improves f.  Degenerate pairs with A <= 0 (proportional
    rows) fall back to comparing the two endpoints, where the profile is
    affine.  Returns a new allocation; the total is preserved exactly.

    Raises
    ------
    SingularDesign
        If f(n0) = 0.
    """
    X = design_matrix(X)
    m, d = X.shape
    w = np.asarray(w, dtype=float)
    if len(w) != m:
        raise DimensionMismatch(f"{len(w)} weights for {m} design rows")
    n = integer_allocation(n0)
    if len(n) != m:
        raise DimensionMismatch(f"allocation of length {len(n)} for {m} rows")
    total = int(n.sum())

    f = objective(X, w, n)
    if f <= 0.0:
        raise SingularDesign("starting exact design has a singular information matrix")

    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(m), 2))
    for _ in range(10_000):
        changed = False
        for k in rng.permutation(len(pairs)):
            i, j = pairs[k]
            s = int(n[i] + n[j])
            if s == 0:
                continue
            prof = pair_profile(X, w, n, i, j)
            if prof.A > 0:
                z, val = maximize_pair(prof, current=int(n[i]))
            else:
                # affine profile: compare the endpoints, keep ties in place
                z, val = max(
                    ((0, s * prof.C + prof.D), (s, s * prof.B + prof.D)),
                    key=lambda t: t[1],
                )
            if z != n[i] and val > f * _ACCEPT:
                n[i] = z
                n[j] = s - z
                f = objective(X, w, n)
                changed = True
        assert int(n.sum()) == total
        if not changed:
            break
    return n


def round_allocation(p, total: int) -> np.ndarray:
    """Largest-remainder rounding of total * p to an integer allocation.

    Floors every entry, then hands the leftover units to the largest
    fractional parts (ties to the lower index).
    """
    if total < 1:
        raise DimensionMismatch("total must be a positive integer")
    p = allocation(p)
    scaled = p * total
    base = np.floor(scaled).astype(int)
    leftover = int(total - base.sum())
    if leftover > 0:
        frac = scaled - base
        order = np.argsort(-frac, kind="stable")
        base[order[:leftover]] += 1
    return base


def _repair_rank(X, w, n):
    """Move single units until the support spans rank d (fallback path)."""
    m, d = X.shape
    n = n.copy()
    for _ in range(d + 1):
        if objective(X, w, n) > 0.0:
            return n
        sup = [i for i in range(m) if n[i] > 0]
        rank = np.linalg.matrix_rank(X[sup])
        if rank >= d:
            return n
        adder = next(
            (r for r in range(m)
             if n[r] == 0 and np.linalg.matrix_rank(X[sup + [r]]) > rank),
            None,
        )
        if adder is None:
            break
        donors = [i for i in sup if n[i] >= 2]
        if donors:
            donor = max(donors, key=lambda i: (n[i], -i))
        else:
            donor = next(
                (i for i in sup
                 if np.linalg.matrix_rank(X[[j for j in sup if j != i]]) == rank),
                None,
            )
            if donor is None:
                break
        n[donor] -= 1
        n[adder] += 1
    if objective(X, w, n) <= 0.0:
        raise SingularDesign("could not seed a full-rank exact design")
    return n


def optimize_exact(X, w, total: int, seed=0, n_starts: int = 5) -> np.ndarray:
    """Approximate-then-exact pipeline with multi-start exchange.

    Runs lift-one, rounds its optimum to ``total`` units by largest
    remainder (repairing rank if the rounding dropped essential rows),
    then runs the exchange from that start with ``n_starts`` different
    pair orders and returns the best allocation found.
    """
    X = design_matrix(X)
    m, d = X.shape
    if total < d:
        raise DimensionMismatch(f"total {total} cannot support {d} parameters")
    approx = lift_one_optimize(X, w, opts=LiftOneOptions(seed=seed))
    n0 = round_allocation(approx.p_opt, total)
    if objective(X, w, n0) <= 0.0:
        n0 = _repair_rank(X, w, round_allocation(np.full(m, 1.0 / m), total))

    best_n, best_f = None, -1.0
    for child in np.random.SeedSequence(seed).spawn(n_starts):
        n = exchange_optimize(X, w, n0, seed=child)
        fn = objective(X, w, n)
        if fn > best_f * _ACCEPT:
            best_n, best_f = n, fn
    return best_n
