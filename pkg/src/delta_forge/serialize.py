"""Canonical JSON-compatible encodings for ring elements."""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError
from .rings import ARITHMETIC, SeriesElement, WittElement


def elem_to_json(x):
    if isinstance(x, WittElement):
        return list(x.coeffs)
    if isinstance(x, SeriesElement):
        return [str(c) for c in x.coeffs]
    raise InputError(f"not a ring element: {x!r}")


def elem_from_json(ring, v, prec=None):
    if isinstance(v, int):
        return ring.from_int(v, prec)
    if isinstance(v, str):
        if ring.kind == ARITHMETIC:
            return ring.from_int(int(v), prec)
        return ring.from_rational(Fraction(v), prec)
    if isinstance(v, list):
        if ring.kind == ARITHMETIC:
            return ring.element([int(c) for c in v], prec)
        return ring.element([Fraction(c) for c in v], prec)
    raise InputError(f"cannot decode element from {v!r}")
