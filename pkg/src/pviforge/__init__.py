"""Algebraic Painleve VI solutions from complex reflection groups."""

__version__ = "0.1.0"
