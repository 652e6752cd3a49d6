"""Exact invariants of function fields and local rings in characteristic p.

Computes p-degree, transcendence degree, embedding dimension and embedding
jumps under purely inseparable base change, with verification oracles for
each structural claim the computations rely on.
"""

__version__ = "0.1.0"
