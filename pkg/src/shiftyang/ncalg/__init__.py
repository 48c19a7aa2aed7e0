"""Exact coefficient rings, noncommutative polynomials, tensors and the parser."""

from .ncpoly import ArityMismatch, NCPoly, nc_arith, total
from .parser import ParseError, parse_expr
from .scalars import RingMismatch, ScalarRing, get_ring, ring_from_id
from .words import E, F, FAMILIES, H, S, letter, letter_str, level_of, unpack, word_str

__all__ = [
    "ArityMismatch",
    "E",
    "F",
    "FAMILIES",
    "H",
    "NCPoly",
    "ParseError",
    "RingMismatch",
    "S",
    "ScalarRing",
    "get_ring",
    "letter",
    "letter_str",
    "level_of",
    "nc_arith",
    "parse_expr",
    "ring_from_id",
    "total",
    "unpack",
    "word_str",
]
