"""Controllable concept-to-sentence generation toolkit."""

__version__ = "0.1.0"
