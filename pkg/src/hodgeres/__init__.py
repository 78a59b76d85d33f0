"""Exact recomputation of the boundary terms in the noncommutative residue
of Hodge-Dirac operators on 4-manifolds with boundary."""

__version__ = "0.1.0"
ENGINE_VERSION = __version__
