"""Exact finite-carrier toolkit for generalized distances."""

__version__ = "0.1.0"
