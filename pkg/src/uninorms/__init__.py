"""Uninorms on the unit square: construction, analysis and decomposition."""
