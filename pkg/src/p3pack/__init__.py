"""Packings and factors of 3-vertex paths in cubic graphs."""

__version__ = "0.1.0"
