"""Quantum correlations of amplitude-damped two-qubit cat states."""

__version__ = "0.1.0"
