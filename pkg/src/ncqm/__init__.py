"""Deformed two-mode Heisenberg algebra: exact symbolic engine and truncated Fock numerics."""

__version__ = "0.1.0"
