"""Exact cut-and-join expansions of triple Hodge tau-functions."""

__version__ = "0.1.0"
