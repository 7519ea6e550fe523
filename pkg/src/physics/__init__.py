"""Numerical library: matrices, channels, states, measures and analysis."""
