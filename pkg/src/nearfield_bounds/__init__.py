"""Radiative near-field boundary distances for misaligned antenna-array links."""

__version__ = "0.1.0"
