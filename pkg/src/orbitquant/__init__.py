"""Quantizations on nilpotent Lie groups with flat coadjoint orbits."""

__version__ = "0.1.0"
