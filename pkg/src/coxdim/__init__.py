"""Dimension computations for right-angled Coxeter groups, their products, and free products."""

__version__ = "0.1.0"
