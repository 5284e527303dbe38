"""Symbolic Milnor-Witt K-theory and cycle modules over small bases."""

__version__ = "0.1.0"
