"""Shared exception types."""


class CapacityError(RuntimeError):
    """Raised when an exact/dense computation is requested beyond its size cap."""
