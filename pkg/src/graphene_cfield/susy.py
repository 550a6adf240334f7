"""Closed-form spectra and eigenstates of the partner Hamiltonians
H-+ = -d^2/dx^2 + w^2 -+ w' and of the Dirac-Weyl spinors built from them.

Every eigenfunction is written as ``exp(phi(x)) * P(t(x))`` with ``P`` one
of the polynomials in :mod:`graphene_cfield.specfun`; first and second
derivatives follow analytically from phi', phi'', t', t''.

Labelling follows the usual SUSY convention: psi-_n has eigenvalue eps_n,
psi+_{n-1} shares it, and eps_0 = 0 belongs to H- only.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from . import specfun
from .profiles import NATURAL, DomainError, ProfileKind, Superpotential, partner_potentials
from .quadrature import QuadratureError, adaptive_simpson

HALF_PI = 0.5 * math.pi
SUPPORT_TOL = 1e-10
EXPANSION_CAP = 1e3


class InadmissibleError(ValueError):
    """Requested state is not square-integrable for these parameters."""


class Branch(enum.Enum):
    MINUS = "minus"
    PLUS = "plus"


class Sign(enum.IntEnum):
    ELECTRON = 1
    HOLE = -1


# --- admissibility and eigenvalues -----------------------------------------

def constant_window(profile):
    """+1 for -pi/2 < theta < pi/2, -1 for the opposite half plane."""
    return 1 if abs(profile.theta) < HALF_PI else -1


def admissibility(profile, k, n):
    """Whether Dirac level ``n`` has a square-integrable eigenfunction."""
    if n < 0:
        raise ValueError("n must be >= 0")
    th = profile.theta
    if profile.kind is ProfileKind.CONSTANT:
        return not math.isclose(abs(th), HALF_PI, rel_tol=0.0, abs_tol=1e-15)
    if not -HALF_PI < th < HALF_PI:
        return False
    if profile.kind is ProfileKind.EXP:
        return k > n * profile.mu
    return True


def _violation(profile, k, n):
    kind = profile.kind.value.upper()
    if profile.kind is ProfileKind.CONSTANT:
        return f"theta = +-pi/2 gives no bound states for {kind}"
    if not -HALF_PI < profile.theta < HALF_PI:
        return f"theta outside (-pi/2, pi/2) for {kind}"
    return f"k > n*mu violated for {kind} (k={k}, n={n}, mu={profile.mu})"


def require_admissible(profile, k, n):
    if not admissibility(profile, k, n):
        raise InadmissibleError(_violation(profile, k, n))


def _trig_eps(D, k, mu, n):
    Dn = D + n * mu
    return k * k - D * D + Dn * Dn - k * k * D * D / (Dn * Dn)


def eigenvalue_minus(profile, k, n, constants=NATURAL):
    """eps-_n, which is also eps+_{n-1}."""
    require_admissible(profile, k, n)
    if n == 0:
        return 0j
    sp = Superpotential(profile, k, constants)
    if profile.kind is ProfileKind.CONSTANT:
        return constant_window(profile) * n * sp.omega
    if profile.kind is ProfileKind.TRIG:
        return complex(_trig_eps(sp.D, k, profile.mu, n))
    return complex(k * k - (k - n * profile.mu) ** 2)


def energy(profile, k, n, sign=Sign.ELECTRON, constants=NATURAL):
    """E_n = +-hbar v0 sqrt(eps_n) on the principal square-root branch."""
    eps = eigenvalue_minus(profile, k, n, constants)
    return Sign(sign) * constants.hbar * constants.v0 * cmath.sqrt(eps)


def spectrum(profile, k, n_max, sign=Sign.ELECTRON, constants=NATURAL):
    """``[(n, eps_n, E_n), ...]`` over the admissible levels n <= n_max."""
    rows = []
    for n in range(n_max + 1):
        if not admissibility(profile, k, n):
            break
        rows.append((n, eigenvalue_minus(profile, k, n, constants), energy(profile, k, n, sign, constants)))
    return rows


# --- eigenfunction kernels -------------------------------------------------

@dataclass(frozen=True)
class _Kernel:
    """Unnormalised exp(phi) * P(t); evaluates value and two derivatives."""

    family: specfun.PolyFamily
    degree: int
    params: tuple
    phase: complex
    parts: object  # x -> (phi, phi', phi'', t, t', t'')
    center: float
    halfwidth: float
    interval: tuple = (-math.inf, math.inf)

    def evaluate(self, x, order=2):
        x = np.asarray(x, dtype=float)
        lo, hi = self.interval
        if np.any((x < lo) | (x > hi)):
            raise DomainError(f"x outside ({lo}, {hi})")
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            phi, d1, d2, t, t1, t2 = self.parts(x)
            ev = np.exp(phi) * self.phase
            P = specfun.evaluate(self.family, self.degree, t, *self.params)
            out = [ev * P]
            if order >= 1:
                Pt = specfun.evaluate(self.family, self.degree, t, *self.params, derivative=1)
                Px = t1 * Pt
                out.append(ev * (d1 * P + Px))
            if order >= 2:
                Ptt = specfun.evaluate(self.family, self.degree, t, *self.params, derivative=2)
                Pxx = t2 * Pt + t1 * t1 * Ptt
                out.append(ev * ((d2 + d1 * d1) * P + 2.0 * d1 * Px + Pxx))
            dead = ev == 0
            out = [np.where(dead, 0j, o) for o in out]
        return out


def _gauss_hermite_kernel(scale_sq, shift, degree, center):
    """exp(-z^2/2) H_d(z), z = a (x + shift), a^2 = scale_sq with Re a^2 > 0."""
    a = cmath.sqrt(scale_sq)

    def parts(x):
        z = a * (x + shift)
        return -0.5 * z * z, -a * z, -scale_sq * np.ones_like(z), z, a, 0.0

    return _Kernel(specfun.PolyFamily.HERMITE, degree, (), 1.0 + 0j, parts,
                   center, 3.0 / math.sqrt(scale_sq.real))


def _trig_kernel(Dp, kp, n, mu):
    """sin^{s+n}(mu x) e^{r mu x} P_n^{(-s-n-ir, -s-n+ir)}(i cot mu x)."""
    s = Dp / mu
    r = -kp * Dp / (mu * (Dp + n * mu))
    alpha, beta = -s - n - 1j * r, -s - n + 1j * r
    p = s + n

    def parts(x):
        sn, cs = np.sin(mu * x), np.cos(mu * x)
        cot = cs / sn
        csc2 = 1.0 / (sn * sn)
        phi = p * np.log(sn + 0j) + r * mu * x
        return (phi, p * mu * cot + r * mu, -p * mu * mu * csc2,
                1j * cot, -1j * mu * csc2, 2j * mu * mu * csc2 * cot)

    # (-i)^n makes the theta = 0 functions real
    return _Kernel(specfun.PolyFamily.JACOBI, n, (alpha, beta), (-1j) ** n, parts,
                   0.5 * math.pi / mu, 0.5 * math.pi / mu, (0.0, math.pi / mu))


def _morse_kernel(kp, n, D, mu, center):
    """zeta^{s-n} e^{-zeta/2} L_n^{2(s-n)}(zeta), zeta = (2D/mu) e^{-mu x}, s = kp/mu."""
    s = kp / mu
    q = s - n
    logc = cmath.log(2.0 * D / mu)

    def parts(x):
        zeta = np.exp(logc - mu * x)
        phi = q * (logc - mu * x) - 0.5 * zeta
        return phi, -q * mu + 0.5 * mu * zeta, -0.5 * mu * mu * zeta, zeta, -mu * zeta, mu * mu * zeta

    return _Kernel(specfun.PolyFamily.LAGUERRE, n, (2.0 * q,), 1.0 + 0j, parts, center, 2.0 / mu)


def _constant_center(sp):
    return -2.0 * sp.k / sp.omega.real


def _exp_center(sp):
    return math.log(sp.D.real / sp.k) / sp.profile.mu


def _kernel_for(profile, k, n, branch, constants):
    """Kernel and eigenvalue of psi^branch_n (assumes admissibility checked)."""
    sp = Superpotential(profile, k, constants)
    m = n if branch is Branch.MINUS else n + 1  # level whose eigenvalue is shared
    eps = eigenvalue_minus(profile, k, m, constants)
    if profile.kind is ProfileKind.CONSTANT:
        om = sp.omega
        if constant_window(profile) == 1:
            ker = _gauss_hermite_kernel(om / 2.0, 2.0 * k / om, n, _constant_center(sp))
        else:
            # roles of H- and H+ swap: the zero mode sits in H+
            if branch is Branch.MINUS and n == 0:
                raise InadmissibleError(
                    "psi-_0 is not square-integrable for pi/2 < |theta| <= pi "
                    "(the zero mode belongs to H+)")
            degree = n - 1 if branch is Branch.MINUS else n + 1
            ker = _gauss_hermite_kernel(-om / 2.0, 2.0 * k / om, degree, _constant_center(sp))
        return ker, eps
    mu = profile.mu
    if profile.kind is ProfileKind.TRIG:
        D = sp.D
        if branch is Branch.MINUS:
            return _trig_kernel(D, k, n, mu), eps
        return _trig_kernel(D + mu, k * D / (D + mu), n, mu), eps
    kp = k if branch is Branch.MINUS else k - mu
    return _morse_kernel(kp, n, sp.D, mu, _exp_center(sp)), eps


def _support(kernel, tol=SUPPORT_TOL, samples=4001):
    """Interval outside of which |psi| < tol * max|psi|."""
    if kernel.interval[0] > -math.inf:
        lo, hi = kernel.interval
        delta = 1e-6 * (hi - lo) / math.pi
        return lo + delta, hi - delta
    a = kernel.center - kernel.halfwidth
    b = kernel.center + kernel.halfwidth
    edge = max(samples // 50, 2)
    while True:
        x = np.linspace(a, b, samples)
        m = np.abs(kernel.evaluate(x, order=0)[0])
        peak = m.max()
        if not np.isfinite(peak) or peak == 0:
            raise QuadratureError("eigenfunction vanishes or overflows on the trial interval")
        grow = 0.5 * (b - a)
        left_ok = m[:edge].max() < tol * peak
        right_ok = m[-edge:].max() < tol * peak
        if left_ok and right_ok:
            # trim to one sample beyond the outermost point above threshold
            inside = np.nonzero(m >= tol * peak)[0]
            return float(x[max(inside[0] - 1, 0)]), float(x[min(inside[-1] + 1, samples - 1)])
        if not left_ok:
            a -= grow
        if not right_ok:
            b += grow
        if max(abs(a), abs(b)) > EXPANSION_CAP:
            raise QuadratureError(f"support exceeds |x| <= {EXPANSION_CAP:g}")


@dataclass(frozen=True)
class ScalarEigenpair:
    """Normalised eigenfunction of H- or H+ with its eigenvalue.

    ``psi = c_n * kernel`` with ``c_n > 0`` fixed by the integral of |psi|^2.
    ``pseudo_norm`` is the bilinear integral of psi^2 (no conjugation), the
    product under which L+ is the transpose of L-.
    """

    n: int
    branch: Branch
    eps: complex
    c_n: float
    support: tuple
    pseudo_norm: complex
    kernel: _Kernel = field(repr=False, compare=False)

    def psi(self, x):
        return self.c_n * self.kernel.evaluate(x, order=0)[0]

    def psi_prime(self, x):
        return self.c_n * self.kernel.evaluate(x, order=1)[1]

    def psi_second(self, x):
        return self.c_n * self.kernel.evaluate(x, order=2)[2]

    def all_derivatives(self, x):
        return [self.c_n * v for v in self.kernel.evaluate(x, order=2)]

    def grid(self, n_points=2001):
        return np.linspace(self.support[0], self.support[1], n_points)


def _normalise(kernel, n, branch, eps):
    a, b = _support(kernel)
    x = np.linspace(a, b, 4001)
    peak = np.abs(kernel.evaluate(x, order=0)[0]).max()

    def dens(t):
        return np.abs(kernel.evaluate(t, order=0)[0] / peak) ** 2

    norm2 = adaptive_simpson(dens, a, b)
    c = 1.0 / (peak * math.sqrt(norm2))
    pseudo = adaptive_simpson(lambda t: (c * kernel.evaluate(t, order=0)[0]) ** 2, a, b)
    return ScalarEigenpair(n, branch, complex(eps), c, (a, b), complex(pseudo), kernel)


def eigenfunction(profile, k, n, branch=Branch.MINUS, constants=NATURAL):
    """Normalised psi^branch_n.  PLUS needs level n+1 admissible."""
    branch = Branch(branch)
    require_admissible(profile, k, n if branch is Branch.MINUS else n + 1)
    kernel, eps = _kernel_for(profile, k, n, branch, constants)
    return _normalise(kernel, n, branch, eps)


def _plus_zero_mode(profile, k, constants):
    """1/psi-_0-type zero mode of H+, square-integrable only for Re(omega) < 0."""
    sp = Superpotential(profile, k, constants)
    om = sp.omega
    kernel = _gauss_hermite_kernel(-om / 2.0, 2.0 * k / om, 0, _constant_center(sp))
    return _normalise(kernel, 0, Branch.PLUS, 0j)


# --- ladder operators ------------------------------------------------------

class LadderImage:
    """x -> -+f'(x) + w(x) f(x) for L-+ ; also supplies its first derivative."""

    def __init__(self, sp, direction, f):
        self.sp = sp
        self.direction = Branch(direction)
        self.f = f
        # L- = d/dx + w, L+ = -d/dx + w
        self._s = 1.0 if self.direction is Branch.MINUS else -1.0

    def psi(self, x):
        return self._s * self.f.psi_prime(x) + self.sp(x) * self.f.psi(x)

    __call__ = psi

    def psi_prime(self, x):
        return (self._s * self.f.psi_second(x) + self.sp.prime(x) * self.f.psi(x)
                + self.sp(x) * self.f.psi_prime(x))


def ladder_apply(sp, direction, f):
    """Apply L- (``MINUS``) or L+ (``PLUS``) to ``f``.

    ``f`` needs ``psi`` and ``psi_prime``; ``psi_second`` is required only if
    the derivative of the image is wanted.
    """
    return LadderImage(sp, direction, f)


def proportionality(f_vals, g_vals):
    """Least-squares lam with f ~ lam g, and the relative misfit."""
    lam = np.vdot(g_vals, f_vals) / np.vdot(g_vals, g_vals)
    misfit = np.linalg.norm(f_vals - lam * g_vals) / np.linalg.norm(f_vals)
    return complex(lam), float(misfit)


def eigen_residual(pair, sp, x, second=None):
    """||-psi'' + V psi - eps psi|| / ||psi|| on the samples ``x``.

    ``second`` overrides the analytic psi'' (e.g. with a finite difference).
    """
    vm, vp = partner_potentials(sp, x)
    V = vm if pair.branch is Branch.MINUS else vp
    psi = pair.psi(x)
    d2 = pair.psi_second(x) if second is None else second
    return float(np.linalg.norm(-d2 + V * psi - pair.eps * psi) / np.linalg.norm(psi))


def intertwining_residual(sp, f, x):
    """max |H+ L- f - L- H- f| for ``f`` exposing derivatives 0..3 as ``f.d(x, order)``."""
    f0, f1, f2, f3 = (f.d(x, j) for j in range(4))
    w, w1, w2 = sp(x), sp.prime(x), sp.second(x)
    vm, vp = w * w - w1, w * w + w1
    vm1 = 2.0 * w * w1 - w2
    g = f1 + w * f0
    g2 = f3 + w2 * f0 + 2.0 * w1 * f1 + w * f2
    lhs = -g2 + vp * g
    h = -f2 + vm * f0
    h1 = -f3 + vm1 * f0 + vm * f1
    rhs = h1 + w * h
    return float(np.max(np.abs(lhs - rhs)))


# --- spinors ---------------------------------------------------------------

@dataclass(frozen=True)
class SpinorState:
    """Psi_n = e^{iky} (u, i v) with u = upper_coeff psi+_{n-1}, v = lower_coeff psi-_n.

    The coefficients solve the first-order system L- v = (E/hbar v0) u,
    L+ u = (E/hbar v0) v and normalise the integral of |u|^2 + |v|^2 to one.
    For theta = 0 both equal 1/sqrt(2).
    """

    k: float
    n: int
    sign: Sign
    E: complex
    upper: ScalarEigenpair | None
    lower: ScalarEigenpair | None
    upper_coeff: complex
    lower_coeff: complex
    profile: object = field(repr=False, default=None)
    constants: object = field(repr=False, default=NATURAL)

    @property
    def weights(self):
        """Probability carried by the (upper, lower) components."""
        return abs(self.upper_coeff) ** 2, abs(self.lower_coeff) ** 2

    @property
    def support(self):
        parts = [p.support for p in (self.upper, self.lower) if p is not None]
        return min(p[0] for p in parts), max(p[1] for p in parts)

    def components(self, x):
        """(u(x), v(x)) such that Psi = e^{iky} (u, i v)."""
        x = np.asarray(x, dtype=float)
        u = self.upper_coeff * self.upper.psi(x) if self.upper is not None else np.zeros_like(x, complex)
        v = self.lower_coeff * self.lower.psi(x) if self.lower is not None else np.zeros_like(x, complex)
        return u, v

    def components_prime(self, x):
        x = np.asarray(x, dtype=float)
        u = self.upper_coeff * self.upper.psi_prime(x) if self.upper is not None else np.zeros_like(x, complex)
        v = self.lower_coeff * self.lower.psi_prime(x) if self.lower is not None else np.zeros_like(x, complex)
        return u, v


def spinor_state(profile, k, n, sign=Sign.ELECTRON, constants=NATURAL):
    sign = Sign(sign)
    require_admissible(profile, k, n)
    E = energy(profile, k, n, sign, constants)
    second_window = profile.kind is ProfileKind.CONSTANT and constant_window(profile) == -1
    if n == 0:
        if second_window:
            zero = _plus_zero_mode(profile, k, constants)
            return SpinorState(k, 0, sign, E, zero, None, 1.0 + 0j, 0j, profile, constants)
        lower = eigenfunction(profile, k, 0, Branch.MINUS, constants)
        return SpinorState(k, 0, sign, E, None, lower, 0j, 1.0 + 0j, profile, constants)
    lower = eigenfunction(profile, k, n, Branch.MINUS, constants)
    upper = eigenfunction(profile, k, n - 1, Branch.PLUS, constants)
    sp = Superpotential(profile, k, constants)
    x = lower.grid()
    lam, _ = proportionality(ladder_apply(sp, Branch.MINUS, lower).psi(x), upper.psi(x))
    ratio = lam / (E / (constants.hbar * constants.v0))
    scale = 1.0 / math.sqrt(1.0 + abs(ratio) ** 2)
    return SpinorState(k, n, sign, E, upper, lower, ratio * scale, scale + 0j, profile, constants)


# --- k0 of the trigonometric well -----------------------------------------

@dataclass(frozen=True)
class K0Result:
    k0: float
    residual: float
    degenerate: bool = False


class RootNotFound(RuntimeError):
    pass


def find_k0(profile, constants=NATURAL, k_max=None, step=0.01):
    """Positive k at which Im E_1 changes sign (trigonometric well)."""
    if profile.kind is not ProfileKind.TRIG:
        raise ValueError("k0 is defined for the trigonometric profile only")
    require_admissible(profile, 0.0, 1)
    if profile.theta == 0.0:
        return K0Result(math.nan, 0.0, degenerate=True)
    mu = profile.mu
    D = abs(Superpotential(profile, 0.0, constants).D)
    if k_max is None:
        k_max = 50.0 * max(mu, D * mu)

    def im_e1(k):
        return energy(profile, k, 1, Sign.ELECTRON, constants).imag

    ks = np.arange(step, k_max + 0.5 * step, step)
    vals = np.array([im_e1(k) for k in ks])
    flips = np.nonzero(np.sign(vals[1:]) != np.sign(vals[:-1]))[0]
    if flips.size == 0:
        raise RootNotFound(f"Im E_1 keeps its sign on (0, {k_max:g}]")
    k0 = scipy.optimize.brentq(im_e1, ks[flips[0]], ks[flips[0] + 1], xtol=1e-15, rtol=1e-15, maxiter=200)
    return K0Result(float(k0), abs(im_e1(k0)))
