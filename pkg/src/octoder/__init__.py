"""Exact derivation algebras of octonion algebras and octonionic matrix algebras."""

__version__ = "0.1.0"
