"""Measures on classes of structures with several total orders."""

__version__ = "0.1.0"
