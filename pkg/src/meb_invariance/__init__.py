"""Superposition-invariant unitaries and maximally entangled bases."""

__version__ = "0.1.0"
