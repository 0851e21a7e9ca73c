"""Shared exception types."""


class ResourceBoundError(RuntimeError):
    """An exhaustive search refused to run past its configured bound."""
