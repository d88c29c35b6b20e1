"""Folded quivers over finite fields: admissible automorphisms, valued
quivers, Frobenius-twisted representations and their counts."""
from .errors import QuiverFoldError
from .quiver import AdAutomorphism, AdQuiver, Quiver, load, load_fixture, parse_adquiver

__version__ = "0.1.0"

__all__ = ["AdAutomorphism", "AdQuiver", "Quiver", "QuiverFoldError", "load", "load_fixture",
           "parse_adquiver", "__version__"]
