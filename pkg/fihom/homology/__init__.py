"""FI-homology through the Koszul complex, syzygies and subset colimits."""

from .colimit import colimit_failures, minimal_degree, subset_colimit
from .koszul import (
    ChainComplex,
    HomologyTable,
    fi_homology,
    koszul_complex,
    regularity,
    regularity_check,
)
from .syzygy import free_cover, syzygy_degrees, syzygy_module

__all__ = [
    "ChainComplex",
    "HomologyTable",
    "colimit_failures",
    "fi_homology",
    "free_cover",
    "koszul_complex",
    "minimal_degree",
    "regularity",
    "regularity_check",
    "subset_colimit",
    "syzygy_degrees",
    "syzygy_module",
]
