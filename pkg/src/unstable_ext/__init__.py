"""Exact unstable Ext charts for spheres over the mod-2 Steenrod algebra.

The package computes minimal injective resolutions of suspended trivial
unstable modules by a doubling recursion, reads unstable Adams E2 charts
off the resulting summand bookkeeping, assembles the algebraic EHP long
exact sequences that relate neighboring spheres, and cross-checks every
chart against an independent lambda-algebra homology computation.
"""

from __future__ import annotations

from unstable_ext._backend import BACKEND_NAME

__version__ = "0.1.0"

__all__ = ["BACKEND_NAME", "__version__"]
