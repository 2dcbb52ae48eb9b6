"""Numerics for a translated coupling parameter: deformed exponential
algebra, coupled distributions, deformed Fourier transforms, and
multiplicative-noise diffusion experiments."""

from . import errors, qcore, qdist, qft, qseq, sde
from .errors import CouplingError

__all__ = ["errors", "qcore", "qseq", "qdist", "qft", "sde", "CouplingError"]
__version__ = "0.1.0"
