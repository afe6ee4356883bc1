"""Hopf Galois structures on finite Galois extensions, computed group-theoretically."""

__version__ = "0.1.0"
