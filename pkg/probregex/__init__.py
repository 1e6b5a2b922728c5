"""Probabilistic regular expressions toolkit."""

__version__ = "0.1.0.dev0"
