"""Finite-difference check of the closed forms.

The partner Hamiltonians are discretised with the three-point Laplacian on a
uniform grid with Dirichlet ends.  The resulting matrices are complex
symmetric, not hermitian, so a general dense eigensolver is used.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .profiles import NATURAL, ProfileKind, Superpotential, partner_potentials
from .susy import Branch, _kernel_for, _support, require_admissible

DENSE_LIMIT = 2001


class SpectrumError(RuntimeError):
    """Dense eigensolver failed; ``partial`` holds whatever was obtained."""

    def __init__(self, msg, partial=()):
        super().__init__(msg)
        self.partial = list(partial)


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    n_points: int = 2001

    def __post_init__(self):
        if self.n_points < 3:
            raise ValueError("a grid needs at least 3 points")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")

    @property
    def h(self):
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def x(self):
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def with_points(self, n_points):
        return Grid(self.x_min, self.x_max, n_points)


def auto_domain(profile, k, n_max, constants=NATURAL, n_points=2001):
    """Grid on which |psi| of every level n <= n_max (both partners) has
    dropped below 1e-10 of its peak at the ends."""
    require_admissible(profile, k, n_max)
    if profile.kind is ProfileKind.TRIG:
        delta = 1e-6 / profile.mu
        return Grid(delta, np.pi / profile.mu - delta, n_points)
    lo, hi = np.inf, -np.inf
    for n in range(n_max + 1):
        branches = [Branch.MINUS]
        if profile.kind is not ProfileKind.EXP or k > (n + 1) * profile.mu:
            branches.append(Branch.PLUS)
        for br in branches:
            try:
                kernel, _ = _kernel_for(profile, k, n, br, constants)
            except ValueError:
                continue
            a, b = _support(kernel)
            lo, hi = min(lo, a), max(hi, b)
    return Grid(float(lo), float(hi), n_points)


@dataclass(frozen=True)
class DiscreteOperator:
    grid: Grid
    diagonal: np.ndarray = field(repr=False)
    off_diagonal: complex
    branch: Branch

    def matrix(self):
        n = self.grid.n_points
        off = np.full(n - 1, self.off_diagonal, dtype=complex)
        return np.diag(self.diagonal) + np.diag(off, 1) + np.diag(off, -1)

    def apply(self, s):
        s = np.asarray(s, dtype=complex)
        out = self.diagonal * s
        out[:-1] += self.off_diagonal * s[1:]
        out[1:] += self.off_diagonal * s[:-1]
        return out


def discretize(profile, k, branch, grid, constants=NATURAL):
    """-d^2/dx^2 + V^branch on ``grid``."""
    branch = Branch(branch)
    sp = Superpotential(profile, k, constants)
    vm, vp = partner_potentials(sp, grid.x)
    V = vm if branch is Branch.MINUS else vp
    h2 = grid.h ** 2
    return DiscreteOperator(grid, 2.0 / h2 + V, -1.0 / h2 + 0j, branch)


def residual_norm(op, samples, eps):
    """||A s - eps s||_2 / ||s||_2."""
    s = np.asarray(samples, dtype=complex)
    ns = np.linalg.norm(s)
    if ns == 0:
        raise ValueError("samples are identically zero")
    return float(np.linalg.norm(op.apply(s) - eps * s) / ns)


def _order(vals):
    return sorted(vals, key=lambda z: (abs(z), np.angle(z)))


def dense_spectrum(op, count):
    """The ``count`` eigenvalues of smallest modulus (LAPACK zgeev)."""
    mat = op if isinstance(op, np.ndarray) else op.matrix()
    if mat.shape[0] > DENSE_LIMIT:
        raise ValueError(f"dense path is limited to {DENSE_LIMIT} points")
    try:
        vals = scipy.linalg.eigvals(mat, overwrite_a=True, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise SpectrumError(f"eigensolver did not converge: {exc}") from exc
    finite = vals[np.isfinite(vals)]
    ordered = _order(complex(v) for v in finite)
    if len(finite) < len(vals):
        raise SpectrumError("non-finite eigenvalues returned", ordered[:count])
    return ordered[:count]


@dataclass
class SpectrumMatch:
    pairs: list  # (analytic, numeric, relative error)
    rel_tol: float
    unmatched: list

    @property
    def errors(self):
        return [p[2] for p in self.pairs]

    @property
    def passed(self):
        return bool(self.pairs) and all(e < self.rel_tol for e in self.errors)

    @property
    def failures(self):
        return [i for i, e in enumerate(self.errors) if not e < self.rel_tol]


def match_spectra(analytic, numeric, rel_tol):
    """Greedy nearest-neighbour pairing.

    The error of a level is |a - b| / max(|a|, 1), so the zero mode is
    compared absolutely.  Surplus entries of the longer list are reported
    in ``unmatched``.
    """
    analytic, numeric = list(analytic), list(numeric)
    if not analytic or not numeric:
        raise ValueError("both spectra must be non-empty")
    pool = list(numeric)
    pairs = []
    for a in analytic:
        if not pool:
            break
        j = int(np.argmin([abs(a - b) for b in pool]))
        b = pool.pop(j)
        pairs.append((a, b, abs(a - b) / max(abs(a), 1.0)))
    unmatched = analytic[len(pairs):] if len(analytic) > len(numeric) else pool
    return SpectrumMatch(pairs, rel_tol, unmatched)
