"""Exact MWIS on forbidden-subgraph classes."""

__version__ = "0.1.0"
