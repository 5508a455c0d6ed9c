"""Exact-arithmetic Gromov-Witten pipeline for local P^2 and [C^3/mu_3]."""

from .series import LaurentSeries, Rational, TruncatedSeries, rat

__all__ = ["LaurentSeries", "TruncatedSeries", "Rational", "rat"]

__version__ = "0.1.0"
