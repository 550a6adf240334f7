"""Exactly solvable Dirac electrons in graphene under complex magnetic fields."""
from .profiles import NATURAL, MagneticProfile, PhysicalConstants, ProfileKind, Superpotential
from .susy import Branch, InadmissibleError, Sign, eigenfunction, energy, find_k0, spectrum, spinor_state

__version__ = "0.1.0"

__all__ = [
    "NATURAL", "MagneticProfile", "PhysicalConstants", "ProfileKind", "Superpotential",
    "Branch", "InadmissibleError", "Sign", "eigenfunction", "energy", "find_k0", "spectrum",
    "spinor_state", "__version__",
]
