"""Mod 2 cohomology rings of closed 3-manifolds: MS-algebras, surgery plans and censuses."""

__version__ = "0.1.0"
