"""Computational laboratory for Dirichlet series with gamma-factor functional equations."""
