"""Exact computations for chainsaw-quiver reductions, their quantizations and Yangian images."""

__version__ = "0.1.0"
