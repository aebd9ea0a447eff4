"""Exact finitely additive measures, block Hamiltonian flows, and composition-operator diagnostics."""

__version__ = "0.1.0"
