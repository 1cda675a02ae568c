"""Exact coding of modular-surface geodesics by regular continued fractions."""

__version__ = "1.0.0"
