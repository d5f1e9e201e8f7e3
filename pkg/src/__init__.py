"""Extreme rates - exact finite-sample distances and certified convergence bounds for
the representations of sample extremes."""

__version__ = "1.0.0"
