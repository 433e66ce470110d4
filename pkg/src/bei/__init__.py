"""Binomial edge ideals: Groebner bases, colon ideals, d-sequences and regularity."""

__version__ = "0.1.0"
