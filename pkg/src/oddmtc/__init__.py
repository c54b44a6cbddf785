"""Exact-arithmetic toolkit for odd-dimensional modular tensor category
candidate enumeration: dimension-array search, universal-grading case
analysis, structural discard filters, and golden-table regression data."""

__version__ = "1.0.0"
