"""Exact tropical scheme data for homogeneous ideals over Q(t) and Q."""

__version__ = "0.1.0"

from .errors import CapExceeded, NoMatroidError, ParseError, TropschError
from .poly import Flavor, Relation, TropPoly
from .field import RatFunc, ValuedPoly, trop_of
from .matroid import Matroid, ValuatedMatroid, from_ideal_piece
from .congruence import PiContext, equiv, equiv_graded, pi, pi_direct, pi_fast
from .pipeline import IdealSpec, Valuation, build_degree, hilbert_function
from .parsing import parse_ideal, parse_trop, parse_valued

__all__ = [
    "CapExceeded", "NoMatroidError", "ParseError", "TropschError",
    "Flavor", "Relation", "TropPoly", "RatFunc", "ValuedPoly", "trop_of",
    "Matroid", "ValuatedMatroid", "from_ideal_piece",
    "PiContext", "equiv", "equiv_graded", "pi", "pi_direct", "pi_fast",
    "IdealSpec", "Valuation", "build_degree", "hilbert_function",
    "parse_ideal", "parse_trop", "parse_valued",
]
