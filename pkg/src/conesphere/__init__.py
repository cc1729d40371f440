"""Numerical laboratory for spherical conical metrics built from glued footballs."""

__version__ = "0.1.0"
