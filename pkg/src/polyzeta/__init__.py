"""Shuffle/stuffle algebras, rational series and eulerian functions for multiple zeta values."""

__version__ = "0.1.0"
