"""Complex magnetic-field profiles, their Landau-gauge vector potentials,
superpotentials and SUSY partner potentials.

Field amplitudes are complex, B = |B| e^{i theta}.  With the coupling
``g = e/(c hbar)`` the superpotential is ``w(x) = k + g A(x)`` and
``w'(x) = g B(x)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class DomainError(ValueError):
    """Evaluation point outside the profile's domain."""


class ProfileKind(enum.Enum):
    CONSTANT = "constant"
    TRIG = "trig"
    EXP = "exp"


@dataclass(frozen=True)
class PhysicalConstants:
    """Unit system.  Natural units (all ones) by default.

    ``lattice_a`` (2.46 Angstrom) and ``gamma0`` (3.033 eV) are carried for
    reference only; no formula here uses them.
    """

    hbar: float = 1.0
    v0: float = 1.0
    e_over_c: float = 1.0
    lattice_a: float = 2.46
    gamma0: float = 3.033

    def __post_init__(self):
        for name in ("hbar", "v0", "e_over_c", "lattice_a", "gamma0"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")

    @property
    def coupling(self):
        """e/(c hbar)."""
        return self.e_over_c / self.hbar


NATURAL = PhysicalConstants()


def wrap_angle(theta):
    """Map an angle into (-pi, pi]."""
    t = math.remainder(float(theta), 2.0 * math.pi)
    if t == -math.pi:
        t = math.pi
    return t


@dataclass(frozen=True)
class MagneticProfile:
    kind: ProfileKind
    B_modulus: float
    theta: float = 0.0
    mu: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", ProfileKind(self.kind))
        object.__setattr__(self, "theta", wrap_angle(self.theta))
        if not self.B_modulus > 0:
            raise ValueError("B_modulus must be > 0")
        if self.kind is not ProfileKind.CONSTANT and not self.mu > 0:
            raise ValueError(f"mu must be > 0 for the {self.kind.value} profile")

    @classmethod
    def from_config(cls, cfg):
        """Build from a mapping with keys ``kind, B_modulus, theta, mu``."""
        return cls(ProfileKind(cfg["kind"]), float(cfg["B_modulus"]),
                   float(cfg.get("theta", 0.0)), float(cfg.get("mu", 1.0)))

    @property
    def B(self):
        return self.B_modulus * complex(math.cos(self.theta), math.sin(self.theta))

    @property
    def domain(self):
        """Open interval on which eigenfunctions live."""
        if self.kind is ProfileKind.TRIG:
            return (0.0, math.pi / self.mu)
        return (-math.inf, math.inf)

    def check_domain(self, x):
        if self.kind is ProfileKind.TRIG:
            s = np.sin(self.mu * np.asarray(x, dtype=float))
            if np.any(np.abs(s) < 1e-14):
                raise DomainError("trigonometric profile is singular at multiples of pi/mu")

    def field(self, x):
        """Field amplitude B(x)."""
        x = np.asarray(x, dtype=float)
        self.check_domain(x)
        if self.kind is ProfileKind.CONSTANT:
            return self.B * np.ones_like(x, dtype=complex)
        if self.kind is ProfileKind.TRIG:
            return self.B / np.sin(self.mu * x) ** 2
        return self.B * np.exp(-self.mu * x)

    def field_prime(self, x):
        """dB/dx."""
        x = np.asarray(x, dtype=float)
        self.check_domain(x)
        if self.kind is ProfileKind.CONSTANT:
            return np.zeros_like(x, dtype=complex)
        if self.kind is ProfileKind.TRIG:
            s = np.sin(self.mu * x)
            return -2.0 * self.mu * self.B * np.cos(self.mu * x) / s ** 3
        return -self.mu * self.B * np.exp(-self.mu * x)


def vector_potential(profile, x):
    """Landau-gauge A(x) with A' = B(x)."""
    x = np.asarray(x, dtype=float)
    profile.check_domain(x)
    if profile.kind is ProfileKind.CONSTANT:
        return profile.B * x + 0j
    if profile.kind is ProfileKind.TRIG:
        return -(profile.B / profile.mu) / np.tan(profile.mu * x)
    return -(profile.B / profile.mu) * np.exp(-profile.mu * x)


@dataclass(frozen=True)
class Superpotential:
    """w(x) = k + (e/c hbar) A(x) for a given profile and wavenumber k."""

    profile: MagneticProfile
    k: float
    constants: PhysicalConstants = NATURAL

    @property
    def omega(self):
        """Oscillator frequency 2 e B / (c hbar) of the constant profile."""
        return 2.0 * self.constants.coupling * self.profile.B

    @property
    def D(self):
        """e B / (c hbar mu) of the trigonometric and exponential profiles."""
        return self.constants.coupling * self.profile.B / self.profile.mu

    def __call__(self, x):
        return self.k + self.constants.coupling * vector_potential(self.profile, x)

    def prime(self, x):
        return self.constants.coupling * self.profile.field(x)

    def second(self, x):
        return self.constants.coupling * self.profile.field_prime(x)


def superpotential_eval(sp, x):
    """Return ``(w(x), w'(x))``; w' is analytic."""
    return sp(x), sp.prime(x)


def partner_potentials(sp, x):
    """Return ``(V-, V+)`` with V-+ = w^2 -+ w'."""
    w, wp = superpotential_eval(sp, x)
    return w * w - wp, w * w + wp


def closed_form_partner_potentials(sp, x):
    """The same pair written as complex oscillator / Rosen-Morse / Morse potentials."""
    x = np.asarray(x, dtype=float)
    p = sp.profile
    p.check_domain(x)
    k = sp.k
    if p.kind is ProfileKind.CONSTANT:
        om = sp.omega
        base = om * om / 4.0 * (x + 2.0 * k / om) ** 2
        return base - om / 2.0, base + om / 2.0
    D, mu = sp.D, p.mu
    if p.kind is ProfileKind.TRIG:
        csc2 = 1.0 / np.sin(mu * x) ** 2
        rest = -2.0 * D * k / np.tan(mu * x) + k * k - D * D
        return D * (D - mu) * csc2 + rest, D * (D + mu) * csc2 + rest
    e = np.exp(-mu * x)
    common = k * k + D * D * e * e
    return common - 2.0 * D * (k + mu / 2.0) * e, common - 2.0 * D * (k - mu / 2.0) * e
