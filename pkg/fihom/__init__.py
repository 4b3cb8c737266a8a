"""fihom - exact computations with truncated FI-modules."""

__version__ = "0.1.0"
