"""Exact computations for Smith algebras R(g), their quotients, and the
lattice algebras whose representation theory matches Zhu's algebra of a
lattice vertex operator algebra."""

__version__ = "0.1.0"
