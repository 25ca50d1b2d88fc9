"""Shared problem builders for the test suite.

Each helper returns freshly built arrays so tests can mutate them freely.
The scenarios are the worked examples that the acceptance suite pins
down: a logistic 2x3 factorial, two Poisson 2^2 problems, a Poisson 2x3
with priors on beta, and a gamma 2x4.
"""

import numpy as np
import pytest

import glmdopt as g


def matrix_2x3():
    # columns: intercept, two-level effect, three-level linear, three-level quadratic
    return np.array(
        [
            [1.0, 1.0, 1.0, 1.0],
            [1.0, 1.0, 0.0, -2.0],
            [1.0, 1.0, -1.0, 1.0],
            [1.0, -1.0, 1.0, 1.0],
            [1.0, -1.0, 0.0, -2.0],
            [1.0, -1.0, -1.0, 1.0],
        ]
    )


def matrix_2x2():
    return np.array(
        [
            [1.0, 1.0, 1.0],
            [1.0, 1.0, -1.0],
            [1.0, -1.0, 1.0],
            [1.0, -1.0, -1.0],
        ]
    )


def matrix_two_by_three_level():
    # intercept, two-level effect, one three-level covariate coded 1/0/-1
    return np.array(
        [
            [1.0, 1.0, 1.0],
            [1.0, 1.0, 0.0],
            [1.0, 1.0, -1.0],
            [1.0, -1.0, 1.0],
            [1.0, -1.0, 0.0],
            [1.0, -1.0, -1.0],
        ]
    )


def matrix_2x3_dummy():
    # intercept, two-level effect, two contrasts for a three-level factor
    return np.array(
        [
            [1.0, -1.0, -1.0, -1.0],
            [1.0, -1.0, 1.0, 0.0],
            [1.0, -1.0, 0.0, 1.0],
            [1.0, 1.0, -1.0, -1.0],
            [1.0, 1.0, 1.0, 0.0],
            [1.0, 1.0, 0.0, 1.0],
        ]
    )


def matrix_2x4():
    return np.array(
        [
            [1.0, 1.0, 0.0, 0.0, 0.0],
            [1.0, 1.0, 1.0, 0.0, 0.0],
            [1.0, 1.0, 0.0, 1.0, 0.0],
            [1.0, 1.0, 0.0, 0.0, 1.0],
            [1.0, -1.0, 0.0, 0.0, 0.0],
            [1.0, -1.0, 1.0, 0.0, 0.0],
            [1.0, -1.0, 0.0, 1.0, 0.0],
            [1.0, -1.0, 0.0, 0.0, 1.0],
        ]
    )


def logit_2x3():
    """Logistic 2x3 problem with its published optimum nearby."""
    X = matrix_2x3()
    model = g.GlmModel("binary-logit", np.array([-2.5, 0.15, 0.70, 0.10]))
    return X, model, g.compute_weights(X, model)


def poisson_2x2(beta):
    X = matrix_2x2()
    model = g.GlmModel("poisson-log", np.asarray(beta, dtype=float))
    return X, model, g.compute_weights(X, model)


def gamma_2x4():
    X = matrix_2x4()
    model = g.GlmModel(
        "gamma-inverse",
        np.array([-1.0, -0.75, -0.05, -0.25, -0.05]),
        shape=1.0 / 55.0,
    )
    return X, model, g.compute_weights(X, model)


def uniform_box_prior():
    return (
        g.UniformPrior(-3.0, 3.0),
        g.UniformPrior(0.0, 2.0),
        g.UniformPrior(0.0, 1.5),
        g.UniformPrior(0.0, 3.0),
    )


# Hand-reduced saturated-design conditions for the two worked matrices,
# written on v = 1/w.  Keys are supports, values are (row, condition) pairs
# in increasing row order, matching check_saturated's detail order.

TWO_BY_THREE_LEVEL_RULES = {
    (0, 1, 3): [
        (2, lambda v: v[2] >= v[0] + 4 * v[1]),
        (4, lambda v: v[4] >= v[0] + v[1] + v[3]),
        (5, lambda v: v[5] >= 4 * v[0] + 4 * v[1] + v[3]),
    ],
    (2, 4, 5): [
        (0, lambda v: v[0] >= v[2] + 4 * v[4] + 4 * v[5]),
        (1, lambda v: v[1] >= v[2] + v[4] + v[5]),
        (3, lambda v: v[3] >= 4 * v[4] + v[5]),
    ],
}

FACTORIAL_2X3_RULES = {
    (0, 1, 2, 3): [
        (4, lambda v: v[4] >= v[0] + v[1] + v[3]),
        (5, lambda v: v[5] >= v[0] + v[2] + v[3]),
    ],
    (1, 2, 3, 4): [
        (0, lambda v: v[0] >= v[1] + v[3] + v[4]),
        (5, lambda v: v[5] >= v[1] + v[2] + v[4]),
    ],
    (2, 3, 4, 5): [
        (0, lambda v: v[0] >= v[2] + v[3] + v[5]),
        (1, lambda v: v[1] >= v[2] + v[4] + v[5]),
    ],
}


def random_problem(rng, m_max=10, d_max=4, family="poisson-log"):
    """Random full-rank design with positive weights, for property loops."""
    for _ in range(100):
        d = int(rng.integers(2, d_max + 1))
        m = int(rng.integers(d, m_max + 1))
        X = np.column_stack([np.ones(m), rng.uniform(-1.0, 1.0, (m, d - 1))])
        if np.linalg.matrix_rank(X) == d:
            break
    beta = rng.uniform(-1.5, 1.5, d)
    w = g.compute_weights(X, g.GlmModel(family, beta))
    return X, w


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)
