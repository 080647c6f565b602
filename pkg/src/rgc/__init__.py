"""Ribbon graph calculus."""

__version__ = "0.1.0"
