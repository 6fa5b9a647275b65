"""Lyndon-Shirshov words, free operated Lie algebras over exact rationals,
Groebner-Shirshov composition checking, and HNN-style extensions of
Nijenhuis Lie algebras given by structure constants."""

__version__ = "0.1.0"
