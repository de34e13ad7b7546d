"""Exact verification of (q,t)-hook product formulas on d-complete posets."""

__version__ = "0.1.0"
