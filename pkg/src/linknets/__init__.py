"""Exact-arithmetic toolkit for supermodular base polytopes, quiver
combinatorics, linked-net presentations, and simplex tiling certificates."""

__version__ = "0.1.0"
