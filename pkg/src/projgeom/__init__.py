"""Exact synthetic projective geometry over GF(p), the rationals and the
quaternions: flats, incidence audits, configuration theorems, chains of
perspectivities and central-axial collineations."""
from __future__ import annotations

__version__ = "0.1.0"

from .scalars import QUATERNION, RATIONAL, Quaternion, Residue, Ring, gf, ring_from_tag
from .flats import DegenerateError, Flat, join, meet, point, span

__all__ = [
    "QUATERNION", "RATIONAL", "Quaternion", "Residue", "Ring", "gf", "ring_from_tag",
    "DegenerateError", "Flat", "join", "meet", "point", "span", "__version__",
]
