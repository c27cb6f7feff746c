"""Shared exception types."""


class ParseError(ValueError):
    """Malformed input text (cone files, triangulation files, ray files, flags)."""


class InternalError(RuntimeError):
    """An engine invariant failed; indicates a bug, not bad input."""


class LimitError(ValueError):
    """A configured resource limit was exceeded."""
