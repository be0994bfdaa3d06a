"""Planetary models built from compositions of uniform rotations."""

__version__ = "0.1.0"
