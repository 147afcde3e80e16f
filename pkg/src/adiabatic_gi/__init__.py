"""Adiabatic quantum algorithms for graph and subgraph isomorphism."""

__version__ = "0.1.0"
