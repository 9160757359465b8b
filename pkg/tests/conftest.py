"""Shared independent oracles for the test suite.

Each helper recomputes a quantity along a path disjoint from the
production code: log-gamma Poisson evaluation, brute-force transition
enumeration, matrix powering, and adaptive quadrature.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad


def poisson_pmf_oracle(k: int, z: float) -> float:
    """exp(-z) z^k / k! via log-gamma (independent of the recurrence)."""
    if z == 0.0:
        return 1.0 if k == 0 else 0.0
    return math.exp(-z + k * math.log(z) - math.lgamma(k + 1))


def transition_matrix_oracle(z: float, B: int, n_max: int) -> np.ndarray:
    """Brute-force transition probabilities by enumerating arrival counts.

    From state i with k arrivals the next state is max(i + k - B, 0),
    clipped to n_max (the production builder folds the overflow into the
    last column).  Enumerates far enough that the remaining Poisson tail
    is below double rounding, then assigns it to the last column.
    """
    n = n_max + 1
    k_hi = n_max + B + 256
    pmf = np.array([poisson_pmf_oracle(k, z) for k in range(k_hi + 1)])
    P = np.zeros((n, n))
    for i in range(n):
        for k in range(k_hi + 1):
            j = min(max(i + k - B, 0), n_max)
            P[i, j] += pmf[k]
        P[i, n_max] += max(0.0, 1.0 - pmf.sum())
    return P


def matrix_power_stationary_oracle(P: np.ndarray, spread_tol: float = 1e-12) -> np.ndarray:
    """Stationary vector by repeated squaring until all rows agree."""
    Q = P.copy()
    for _ in range(200):
        spread = float((Q.max(axis=0) - Q.min(axis=0)).max())
        if spread < spread_tol:
            break
        Q = Q @ Q
        Q /= Q.sum(axis=1, keepdims=True)
    pi = Q.mean(axis=0)
    return pi / pi.sum()


def kernel_coefficient_quadrature(z: float, m: int) -> float:
    """(1/z) * integral_0^z exp(-x) x^m / m! dx by adaptive quadrature."""
    if m > 600:
        raise ValueError("quadrature oracle not meant for huge m")
    log_fact = math.lgamma(m + 1)

    def integrand(x: float) -> float:
        if x == 0.0:
            return 1.0 if m == 0 else 0.0
        return math.exp(-x + m * math.log(x) - log_fact)

    val, _ = quad(integrand, 0.0, z, epsabs=1e-15, epsrel=1e-13, limit=300)
    return val / z
