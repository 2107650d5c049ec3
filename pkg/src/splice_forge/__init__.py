"""Exact splice-diagram calculus and tightness decisions for fibered graph multilinks."""

__version__ = "0.1.0"
