"""Procedural Bongard-style problems from a turtle-graphics action language."""

__version__ = "0.1.0"
