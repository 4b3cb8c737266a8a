"""Catalan combinatorics and saturation of facet sums."""

from .catalan import CatalanSet, enumerate_sigma, verify_bigb, verify_indb
from .saturation import check_saturation, saturation_grid, torsion_threshold

__all__ = [
    "CatalanSet",
    "check_saturation",
    "enumerate_sigma",
    "saturation_grid",
    "torsion_threshold",
    "verify_bigb",
    "verify_indb",
]
