"""Exact computations with lattice vertex operator algebras, Zhu algebras and modules."""
