"""Exact verification of a golden-ratio conic problem and two constructions of T2."""

__version__ = "0.1.0"
