"""Exact computations on Borel subalgebras of simple Lie algebras and their coadjoint orbits."""

__version__ = "1.0.0"
