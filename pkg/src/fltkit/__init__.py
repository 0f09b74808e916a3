"""Exact and numeric tools for the arithmetic objects behind Fermat's Last Theorem.

Submodules: exactnum, matrix2, ecurve, apcount, qexp, lattice, galois,
classical, emit and cli.
"""
from . import apcount, classical, ecurve, exactnum, galois, lattice, matrix2, qexp
from .errors import DomainError

__version__ = "0.1.0"

__all__ = ["apcount", "classical", "ecurve", "exactnum", "galois", "lattice", "matrix2", "qexp", "DomainError"]
