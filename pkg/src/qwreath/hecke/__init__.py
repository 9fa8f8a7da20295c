"""Hecke algebras of types A and B and the Hu-algebra toolchain."""

from .algebra import HeckeAlgebra, HeckeElement

__all__ = ["HeckeAlgebra", "HeckeElement"]
