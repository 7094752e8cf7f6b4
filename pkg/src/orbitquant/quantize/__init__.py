"""Numerical quantizations, transforms and the verification harness."""
