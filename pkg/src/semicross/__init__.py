"""Compactness of multiplication operators on semicrossed products C_0(X) x_phi Z_+."""

from .algebra import AlgebraElement, cesaro_mean, fourier_coefficient, l1_norm, multiply, sandwich
from .dynsys import DynamicalSystem, parse_system
from .funcspace import ModelFunction, make_function
from .profile import Profile
from .scalar import Scalar

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "DynamicalSystem",
    "ModelFunction",
    "Profile",
    "Scalar",
    "cesaro_mean",
    "fourier_coefficient",
    "l1_norm",
    "make_function",
    "multiply",
    "parse_system",
    "sandwich",
]
