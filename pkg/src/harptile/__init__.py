"""Turing machines compiled to finite tilings of the heptagrid {7,3}."""

__version__ = "0.1.0"
