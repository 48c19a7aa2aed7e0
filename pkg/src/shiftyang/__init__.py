"""Shifted Yangians, coproducts and the type A Toda lattice, computed exactly."""

__version__ = "0.1.0"
