"""Tooling for constant-depth reflection-gate quantum circuits."""

__version__ = "0.1.0"
