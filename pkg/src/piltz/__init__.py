"""Computational laboratory for the Piltz divisor problem over number fields."""

__version__ = "0.1.0"
