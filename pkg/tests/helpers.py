"""Shared independent oracles for the test suite.

Everything in here recomputes a target quantity by a route the library
never uses, so agreement is evidence rather than tautology.
"""

import numpy as np
from scipy.optimize import linprog


def w2sq_lp(x, y):
    """Squared Wasserstein-2 between empirical laws via the transport LP.

    Variables are the m*k coupling entries; marginals are uniform.
    Solved with HiGHS; exact up to LP tolerance on these tiny instances.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    m, k = x.size, y.size
    cost = ((x[:, None] - y[None, :]) ** 2).reshape(-1)
    A_eq = np.zeros((m + k, m * k))
    for i in range(m):
        A_eq[i, i * k:(i + 1) * k] = 1.0
    for j in range(k):
        A_eq[m + j, j::k] = 1.0
    b_eq = np.concatenate([np.full(m, 1.0 / m), np.full(k, 1.0 / k)])
    res = linprog(cost, A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    assert res.status == 0, res.message
    return float(res.fun)


def ridge_dense(X, Y, rho):
    """Ridge coefficients by an explicit dense normal-equation solve."""
    X = np.asarray(X, dtype=float)
    p = X.shape[1]
    return np.linalg.solve(X.T @ X + rho * np.eye(p), X.T @ np.asarray(Y, dtype=float))
