"""Carathéodory completeness toolkit for log-polyhedral Reinhardt domains."""

__version__ = "0.1.0"
