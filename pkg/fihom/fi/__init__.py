"""FI-modules: permutations, FB-modules, truncated modules, maps and functors."""

from .degrees import Degree, DegreeTable
from .fb import FBModule
from .functors import (
    derivative_and_kernel,
    facet_lattice,
    generation_filtration,
    h0,
    iterated_derivative,
    shift,
    torsion_kernel,
)
from .maps import FIMap, cokernel_of_map, image_of_map, kernel_of_map
from .module import (
    FIElement,
    FIModule,
    FreeBasisLabel,
    Submodule,
    apply_injection,
    free_fi_module,
    quotient_module,
    restrict,
    span_submodule,
    validate_presentation,
)
from .permutations import Injection, adjacent_word

__all__ = [
    "Degree",
    "DegreeTable",
    "FBModule",
    "FIElement",
    "FIMap",
    "FIModule",
    "FreeBasisLabel",
    "Injection",
    "Submodule",
    "adjacent_word",
    "apply_injection",
    "cokernel_of_map",
    "derivative_and_kernel",
    "facet_lattice",
    "free_fi_module",
    "generation_filtration",
    "h0",
    "image_of_map",
    "iterated_derivative",
    "kernel_of_map",
    "quotient_module",
    "restrict",
    "shift",
    "span_submodule",
    "torsion_kernel",
    "validate_presentation",
]
