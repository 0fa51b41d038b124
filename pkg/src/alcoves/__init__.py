"""Exact-arithmetic alcove-walk combinatorics for untwisted affine type A."""

__version__ = "0.1.0"
