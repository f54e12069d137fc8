"""Artin-Schreier L-functions over finite fields and their family moments."""

__version__ = "0.1.0"
