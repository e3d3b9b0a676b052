"""Symmetric norms, symmetric anti-norms and randomized matrix-inequality checks."""

__version__ = "0.1.0"
