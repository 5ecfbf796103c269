"""Exact tools for stable polynomials, their supports, and the Fano obstruction."""

__version__ = "0.1.0"
