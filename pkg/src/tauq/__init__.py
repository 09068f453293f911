"""Exact symbolic checks for Courant algebroids and their transgression."""

__version__ = "0.1.0"
