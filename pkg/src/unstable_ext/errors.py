"""Package-wide error types."""

from __future__ import annotations


class InternalError(Exception):
    """An internal consistency invariant failed; results must not be trusted."""


class StaleCacheError(Exception):
    """A cache entry fails its content check; delete the file and recompute."""
