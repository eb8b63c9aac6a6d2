"""Graded modules over exterior algebras, stable categories and the BGG correspondence."""

__version__ = "0.1.0"
