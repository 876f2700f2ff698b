"""Sandpile groups of d-regular trees."""

__version__ = "0.1.0"
