"""Exact combinatorics of tropical curves, their Jacobians and the Torelli map."""

__version__ = "0.1.0"
