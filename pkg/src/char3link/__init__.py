"""Degree-3 symbol algebras in characteristic 3: exact arithmetic, norm witnesses and splitting certificates."""

__version__ = "0.1.0"
