"""Exact-arithmetic certification of a deforming hyperbolic/AdS/half-pipe polytope family."""

__version__ = "0.1.0"
