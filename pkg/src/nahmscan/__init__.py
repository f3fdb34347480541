"""Exact solver and classifier for the rank-2 Nahm equations."""

__version__ = "0.1.0"
