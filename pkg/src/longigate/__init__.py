"""Simulations of controlled-phase gates mediated by parametrically
modulated longitudinal qubit-oscillator coupling."""

__version__ = "0.1.0"
