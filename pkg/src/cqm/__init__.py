"""Finite models of test spaces, testables, comprehension categories and their quantum instances."""

__version__ = "0.1.0"
