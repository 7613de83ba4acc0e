"""Exact toolkit for coherent configurations and the matrix multiplication
realizations they support, with numeric exponent bounds derived from them."""

__version__ = "0.1.0"
