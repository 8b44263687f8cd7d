"""Exact numerical calculators for algebraic surfaces."""

__version__ = "0.1.0"
