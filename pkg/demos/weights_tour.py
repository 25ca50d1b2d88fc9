"""Tour of the per-point information weights nu(eta).

The weight of a design point is the Fisher information one replicate at
that point contributes about its linear predictor eta = x' beta.  Every
family/link pair has a closed form; this script tabulates them, shows
the deep-tail behavior that naive formulas lose to overflow, and the
domain rule for the gamma family.
"""

import numpy as np

import glmdopt as g

BINARY = ["binary-logit", "binary-probit", "binary-cloglog", "binary-loglog"]

# nu depends on beta only through eta, so throwaway models suffice here
MODELS = {fam: g.GlmModel(fam, np.zeros(2)) for fam in BINARY + ["poisson-log"]}


def nu(fam, eta):
    return g.nu_eval(MODELS[fam], eta)


print("nu(eta) for the binary links and the log-linear Poisson")
print(f"{'eta':>6}" + "".join(f"{fam.split('-')[1]:>14}" for fam in BINARY) + f"{'poisson':>14}")
for eta in (-4.0, -2.0, -1.0, 0.0, 0.5, 1.0, 2.0, 4.0):
    row = [nu(fam, eta) for fam in BINARY] + [nu("poisson-log", eta)]
    print(f"{eta:6.1f}" + "".join(f"{v:14.6g}" for v in row))

print()
print("logit and probit are symmetric and peak at eta = 0;")
print("cloglog and loglog are asymmetric, so sign conventions matter.")

print()
print("deep tails stay finite (naive exp-based forms overflow near 710):")
for eta in (-40.0, 40.0, -800.0, 800.0):
    vals = ", ".join(f"{fam.split('-')[1]} {nu(fam, eta):.3g}" for fam in BINARY)
    print(f"  eta {eta:6.1f}: {vals}")

print()
print("gamma-inverse weights are k / eta^2 and need one consistent sign:")
X = np.array([[1.0, 1.0], [1.0, 2.0], [1.0, 3.0]])
model = g.GlmModel("gamma-inverse", np.array([0.5, 0.25]), shape=2.0)
print("  all-positive eta:", g.compute_weights(X, model))
try:
    g.compute_weights(X, g.GlmModel("gamma-inverse", np.array([-1.5, 1.0]), shape=2.0))
except g.NonPositiveWeight as exc:
    print(f"  mixed signs are rejected: {exc} (row {exc.index})")

print()
print("normal-identity is the classical case: constant weight 1/variance,")
print("so D-optimality reduces to the beta-free problem:")
model = g.GlmModel("normal-identity", np.array([0.0, 0.0]), variance=4.0)
print("  weights:", g.compute_weights(X, model))
