"""Saturated designs: when d points out of m carry all the mass.

A saturated design supports exactly d points, each with mass 1/d, so
the objective collapses to a single squared determinant.  Whether such
a design is globally optimal reduces to one closed-form inequality per
excluded point, which check_saturated evaluates directly from the
design matrix and the weights, without running any optimizer.
"""

import numpy as np

import glmdopt as g

# two-level effect plus a three-level covariate, m = 6 points, d = 3
X = np.array(
    [
        [1.0, 1.0, 1.0],
        [1.0, 1.0, 0.0],
        [1.0, 1.0, -1.0],
        [1.0, -1.0, 1.0],
        [1.0, -1.0, 0.0],
        [1.0, -1.0, -1.0],
    ]
)

# weights enter the criterion through their reciprocals v_i = 1/w_i
v = np.array([1.0, 1.0, 6.0, 1.0, 4.0, 10.0])
w = 1.0 / v
support = (0, 1, 3)

verdict, checks = g.check_saturated(X, w, support)
print(f"support {support} with v = 1/w = {v.tolist()}")
print(f"saturated design optimal: {verdict}")
print(f"{'point':>5} {'lhs':>12} {'rhs':>12} {'margin':>12}  passed")
for chk in checks:
    print(f"{chk.index:5d} {chk.lhs:12.5g} {chk.rhs:12.5g} {chk.margin:12.5g}  {chk.passed}")

# the general certificate must agree with the closed-form shortcut
p = np.zeros(6)
p[list(support)] = 1.0 / 3.0
cert = g.verify_optimal(X, w, p)
print()
print(f"verify_optimal on the same allocation: optimal = {cert.optimal}")

# shrink v[2] until point 2 becomes attractive; the verdict flips
v_tight = v.copy()
v_tight[2] = 4.9
verdict2, checks2 = g.check_saturated(X, 1.0 / v_tight, support)
print()
print(f"after lowering v[2] to {v_tight[2]}: optimal = {verdict2}")
for chk in checks2:
    if not chk.passed:
        print(f"  point {chk.index} fails with margin {chk.margin:.5g}")

# the true optimum then moves mass onto the point that broke the check
res = g.lift_one_optimize(X, 1.0 / v_tight)
print("lift-one optimum for the tightened weights:")
print(np.array2string(res.p_opt, precision=4))

# a support whose rows are linearly dependent cannot be saturated at all
try:
    g.check_saturated(X, w, (0, 1, 2))
except g.SingularSupport as exc:
    print()
    print(f"support (0, 1, 2) is rejected: {exc}")
