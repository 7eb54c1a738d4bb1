"""Kauffman bracket, singular bracket and the 1-cocycle Cross on long knot
diagrams."""

from .bracket import HasDoublePoints, jones, kauffman_bracket, singular_bracket, singular_bracket_eval, vs_polynomial
from .cocycle import (
    CrossReport,
    IndMismatch,
    NotALoop,
    cross_of_loop,
    cross_of_path,
    generic_cross,
    meridian_suite,
    oracle_quotient,
    unknotting_invariant,
)
from .diagram import UNKNOT, DiagramError, LongDiagram, framing, validate, whitney_index, writhe
from .homotopy import CrossingChange, InapplicableMove, Path, R2Insert, R2Remove, R3, apply_event, validate_path
from .poly import A, DELTA, LaurentPoly, SkeinPoly, parse, parse_skein

__version__ = "0.1.0"

__all__ = [
    "A",
    "DELTA",
    "LaurentPoly",
    "SkeinPoly",
    "parse",
    "parse_skein",
    "LongDiagram",
    "UNKNOT",
    "DiagramError",
    "validate",
    "writhe",
    "whitney_index",
    "framing",
    "HasDoublePoints",
    "kauffman_bracket",
    "singular_bracket",
    "singular_bracket_eval",
    "vs_polynomial",
    "jones",
    "Path",
    "R2Insert",
    "R2Remove",
    "R3",
    "CrossingChange",
    "InapplicableMove",
    "apply_event",
    "validate_path",
    "CrossReport",
    "NotALoop",
    "IndMismatch",
    "cross_of_path",
    "cross_of_loop",
    "generic_cross",
    "oracle_quotient",
    "unknotting_invariant",
    "meridian_suite",
]
