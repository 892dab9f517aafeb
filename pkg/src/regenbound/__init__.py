"""Dual-code analysis of exact-repair linear regenerating codes with d = k = n - 1."""

__version__ = "0.1.0"
