"""Classical orthogonal polynomials at complex argument and complex parameters.

Hermite and Laguerre use their three-term recurrences in the degree.  Jacobi
is evaluated from its explicit finite sum: the parameters used by the
trigonometric well change with the level, so recurrences across degrees
are of no use there.  All routines broadcast over numpy arrays of ``z``.
"""
from __future__ import annotations

import enum
import math

import numpy as np


class PolyFamily(enum.Enum):
    HERMITE = "hermite"
    LAGUERRE = "laguerre"
    JACOBI = "jacobi"


def _check_degree(n):
    if int(n) != n or n < 0:
        raise ValueError(f"degree must be a non-negative integer, got {n!r}")
    return int(n)


def generalized_binomial(a, m):
    """C(a, m) for complex ``a`` as the finite product a(a-1)...(a-m+1)/m!."""
    m = _check_degree(m)
    out = complex(1.0)
    for j in range(m):
        out *= (a - j) / (j + 1)
    return out


# --- Hermite (physicists') -------------------------------------------------

def hermite(n, z):
    """Physicists' Hermite polynomial H_n(z) via H_{m+1} = 2z H_m - 2m H_{m-1}."""
    n = _check_degree(n)
    z = np.asarray(z, dtype=complex)
    prev = np.ones_like(z)
    if n == 0:
        return prev
    cur = 2.0 * z
    for m in range(1, n):
        prev, cur = cur, 2.0 * z * cur - 2.0 * m * prev
    return cur


def hermite_deriv(n, z, order=1):
    """``order``-th derivative of H_n, using H_n' = 2n H_{n-1}."""
    n = _check_degree(n)
    z = np.asarray(z, dtype=complex)
    if order > n:
        return np.zeros_like(z)
    factor = 1.0
    for j in range(order):
        factor *= 2.0 * (n - j)
    return factor * hermite(n - order, z)


def hermite_sum(n, z):
    """Explicit coefficient sum  n! sum_m (-1)^m (2z)^(n-2m) / (m! (n-2m)!)."""
    n = _check_degree(n)
    z = np.asarray(z, dtype=complex)
    out = np.zeros_like(z)
    for m in range(n // 2 + 1):
        coef = (-1) ** m * math.factorial(n) / (math.factorial(m) * math.factorial(n - 2 * m))
        out = out + coef * (2.0 * z) ** (n - 2 * m)
    return out


# --- associated Laguerre ---------------------------------------------------

def laguerre(n, lam, z):
    """Associated Laguerre L_n^lam(z) with complex ``lam`` by forward recurrence.

    (m+1) L_{m+1} = (2m + 1 + lam - z) L_m - (m + lam) L_{m-1}
    """
    n = _check_degree(n)
    z = np.asarray(z, dtype=complex)
    prev = np.ones_like(z)
    if n == 0:
        return prev
    cur = 1.0 + lam - z
    for m in range(1, n):
        prev, cur = cur, ((2 * m + 1 + lam - z) * cur - (m + lam) * prev) / (m + 1)
    return cur


def laguerre_deriv(n, lam, z, order=1):
    """d^order/dz^order L_n^lam(z) = (-1)^order L_{n-order}^{lam+order}(z)."""
    n = _check_degree(n)
    z = np.asarray(z, dtype=complex)
    if order > n:
        return np.zeros_like(z)
    return (-1) ** order * laguerre(n - order, lam + order, z)


def laguerre_sum(n, lam, z):
    """Explicit sum  sum_j (-1)^j C(n+lam, n-j) z^j / j!."""
    n = _check_degree(n)
    z = np.asarray(z, dtype=complex)
    out = np.zeros_like(z)
    for j in range(n + 1):
        out = out + (-1) ** j * generalized_binomial(n + lam, n - j) * z ** j / math.factorial(j)
    return out


# --- Jacobi ----------------------------------------------------------------

def jacobi(n, alpha, beta, z):
    """Jacobi polynomial P_n^(alpha, beta)(z) for complex alpha, beta, z.

    Uses 2^-n sum_m C(n+alpha, m) C(n+beta, n-m) (z-1)^(n-m) (z+1)^m with the
    binomials formed as finite products, so no Gamma branch cuts enter.
    """
    n = _check_degree(n)
    z = np.asarray(z, dtype=complex)
    out = np.zeros_like(z)
    zm, zp = z - 1.0, z + 1.0
    for m in range(n + 1):
        coef = generalized_binomial(n + alpha, m) * generalized_binomial(n + beta, n - m)
        out = out + coef * zm ** (n - m) * zp ** m
    return out / 2.0 ** n


def jacobi_deriv(n, alpha, beta, z, order=1):
    """Derivative via d/dz P_n^(a,b) = (n+a+b+1)/2 P_{n-1}^(a+1,b+1), applied ``order`` times."""
    n = _check_degree(n)
    z = np.asarray(z, dtype=complex)
    if order > n:
        return np.zeros_like(z)
    factor = complex(1.0)
    for j in range(order):
        # step j differentiates P_{n-j}^(alpha+j, beta+j)
        factor *= (n + alpha + beta + j + 1) / 2.0
    return factor * jacobi(n - order, alpha + order, beta + order, z)


def jacobi_power_sum(n, alpha, beta, z):
    """Same polynomial expanded about z = 1 instead:

    P_n = sum_j C(n+alpha, n-j) C(n+alpha+beta+j, j) ((z-1)/2)^j
    """
    n = _check_degree(n)
    z = np.asarray(z, dtype=complex)
    t = (z - 1.0) / 2.0
    out = np.zeros_like(z)
    for j in range(n + 1):
        coef = generalized_binomial(n + alpha, n - j) * generalized_binomial(n + alpha + beta + j, j)
        out = out + coef * t ** j
    return out


def evaluate(family, n, z, *params, derivative=0):
    """Dispatch on :class:`PolyFamily`; ``params`` are (lam,) or (alpha, beta)."""
    family = PolyFamily(family)
    if family is PolyFamily.HERMITE:
        if params:
            raise TypeError("Hermite takes no parameters")
        return hermite_deriv(n, z, derivative) if derivative else hermite(n, z)
    if family is PolyFamily.LAGUERRE:
        (lam,) = params
        return laguerre_deriv(n, lam, z, derivative) if derivative else laguerre(n, lam, z)
    alpha, beta = params
    return jacobi_deriv(n, alpha, beta, z, derivative) if derivative else jacobi(n, alpha, beta, z)
