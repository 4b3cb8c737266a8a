"""Exceptions raised by fihom.

Verification operations report failed checks in their result models; these
exceptions are for malformed inputs and violated preconditions.
"""

from __future__ import annotations


class FIHomError(Exception):
    """Base class for all fihom errors."""


class DimensionError(FIHomError, ValueError):
    """Shapes or ambient ranks do not match."""


class TruncationError(FIHomError, ValueError):
    """A degree beyond the truncation of a module was requested."""


class CoxeterError(FIHomError, ValueError):
    """FB action matrices violate the Coxeter relations of S_m."""


class EquivarianceError(FIHomError, ValueError):
    """A degreewise map does not commute with the FI structure."""


class ContainmentError(FIHomError, ValueError):
    """A subobject is not contained in, or not closed in, its ambient module."""


class HypothesisError(FIHomError):
    """A precondition of a verification is not met."""


class InputError(FIHomError, ValueError):
    """A module description or preset could not be understood.

    Attributes:
        field: Dotted path of the offending field, when known
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field
