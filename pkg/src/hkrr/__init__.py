"""Exact graph-homology and Hirzebruch-Riemann-Roch computations on
irreducible symplectic manifolds, with the Chern numbers of generalized
Kummer varieties as the main application."""

__version__ = "0.1.0"
