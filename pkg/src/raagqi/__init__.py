"""Quasi-isometry and commensurability of right-angled Artin groups from their defining graphs."""

__version__ = "0.1.0"
