"""Threshold-k metric dimension of trees: verification, bounds, constructions and tree rewrites."""

__version__ = "0.1.0"
