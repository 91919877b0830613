"""Exact Laurent-series arithmetic over finite fields, sparse T-number
constructions, and brute-force Diophantine approximation scans."""

__version__ = "0.1.0"

from .algebra import FieldDesc, FqElem, TPoly, content_primitive, field, tpoly_gcd
from .errors import TLaurentError

__all__ = [
    "FieldDesc",
    "FqElem",
    "TPoly",
    "TLaurentError",
    "content_primitive",
    "field",
    "tpoly_gcd",
]
