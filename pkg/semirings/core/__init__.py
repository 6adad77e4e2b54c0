"""Finite commutative semirings as operation tables."""
