"""Spectra of composition operators with polynomial symbols on the Schwartz space."""

__version__ = "0.1.0"
