class PointWidthError(Exception):
    """Base class for errors raised by this package."""


class SizeLimitError(PointWidthError):
    """An exhaustive search would exceed its configured size threshold."""

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what}: size {size} exceeds limit {limit}")
        self.what = what
        self.size = size
        self.limit = limit


class InvalidInputError(PointWidthError, ValueError):
    """Malformed hypergraph, instance, or decomposition."""


class NotChordalError(PointWidthError):
    """Raised when a graph has no perfect elimination ordering.

    ``cycle`` is a chordless cycle of length at least four.
    """

    def __init__(self, cycle):
        super().__init__(f"graph is not chordal; chordless cycle {list(cycle)!r}")
        self.cycle = list(cycle)


class InvalidDecompositionError(PointWidthError):
    """A decomposition failed a structural check during solving."""
