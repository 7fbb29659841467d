"""Catenoids, Clifford and Otsuki minimal hypersurfaces in space forms."""

__version__ = "0.1.0"

from .errors import CatenoidError, ConvergenceError, DivergenceError, DomainError, UnsupportedCurvatureError
from .spaceform import CliffordSpec, SpaceForm, clifford_radii, clifford_sff, warp

__all__ = [
    "CatenoidError",
    "ConvergenceError",
    "DivergenceError",
    "DomainError",
    "UnsupportedCurvatureError",
    "CliffordSpec",
    "SpaceForm",
    "clifford_radii",
    "clifford_sff",
    "warp",
    "__version__",
]
