"""Greedy golden-ratio expansions with digits {0, 2, 3}, their natural extensions
and the invariant density, all in exact arithmetic over Q(beta)."""

__version__ = "0.1.0"

from .qbeta import BETA, ONE, ZERO, QBeta, as_qbeta, compare, parse_qbeta, to_float
from .greedy import (GOLDEN, ClassicalMap, DeletedDigitMap, DigitSet, DomainError, expand,
                     golden_step, orbit, support_index, validate)
from .cylinders import cylinder, decompose, enumerate_cylinders, image, mass_of_D
from .natext import (RState, TowerPoint, phi, phi_inverse, step, step_inverse, total_mass,
                     tower_mass, tower_step, tower_strip)
from .measure import (PiecewiseDensity, birkhoff, classical_density, fiber_oracle,
                      golden_density, tower_density, transfer_check)

__all__ = [
    "BETA", "ONE", "ZERO", "QBeta", "as_qbeta", "compare", "parse_qbeta", "to_float",
    "GOLDEN", "ClassicalMap", "DeletedDigitMap", "DigitSet", "DomainError", "expand",
    "golden_step", "orbit", "support_index", "validate",
    "cylinder", "decompose", "enumerate_cylinders", "image", "mass_of_D",
    "RState", "TowerPoint", "phi", "phi_inverse", "step", "step_inverse", "total_mass",
    "tower_mass", "tower_step", "tower_strip",
    "PiecewiseDensity", "birkhoff", "classical_density", "fiber_oracle", "golden_density",
    "tower_density", "transfer_check",
]
