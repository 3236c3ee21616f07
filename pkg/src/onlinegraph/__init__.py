"""Streamed finite graphs: online algorithms, reduction gadgets, oracles."""

__version__ = "0.1.0"
