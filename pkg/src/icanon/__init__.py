"""Kazhdan-Lusztig, hybrid, canonical and ι-canonical bases with exact positivity checks."""

__version__ = "0.1.0"
