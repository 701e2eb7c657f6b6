"""Rational points on Y^2 = X^6 + k by elementary descent."""

__version__ = "0.1.0"
