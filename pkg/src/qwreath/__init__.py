"""Exact computer algebra for quantum wreath products ``B wr_Q H(d)``."""

__version__ = "0.1.0"
