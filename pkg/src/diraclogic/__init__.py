"""Dirac calculus engine."""
