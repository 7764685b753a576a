"""Exact p-adic wavelets, multiresolution analysis and Fourier multipliers."""
from .cyclo import CycloScalar, PowerScalar, root_of_unity, sqrt_prime
from .mbf import MBF, PowerMBF, fourier, inner_product, integral, inverse_fourier
from .padic import Ball, PAdicPoint, ball_canonicalize, enumerate_Ip, point, vector

__all__ = [
    "Ball",
    "CycloScalar",
    "MBF",
    "PAdicPoint",
    "PowerMBF",
    "PowerScalar",
    "ball_canonicalize",
    "enumerate_Ip",
    "fourier",
    "inner_product",
    "integral",
    "inverse_fourier",
    "point",
    "root_of_unity",
    "sqrt_prime",
    "vector",
]

__version__ = "0.1.0"
