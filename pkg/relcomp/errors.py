class RelcompError(Exception):
    """Base class of every error raised by relcomp."""


class InvalidStructureError(RelcompError):
    """Thrown when a structure, signature or lift violates its invariants."""


class SignatureMismatchError(RelcompError):
    """Thrown when an operation receives structures of different signatures."""

    def __init__(self, left: object, right: object) -> None:
        super().__init__(f"Signature mismatch: {left} vs {right}.")


class NotAGraphError(RelcompError):
    """Thrown when a graph-only operation receives something that is not an undirected loopless graph."""

    def __init__(self, reason: str) -> None:
        super().__init__(f"Not a graph: {reason}.")


class StructureParseError(RelcompError):
    """Thrown when structure text cannot be decoded, with line and offset of the first problem."""

    def __init__(self, message: str, line: int = 1, offset: int = 0) -> None:
        self.line = line
        self.offset = offset
        super().__init__(f"line {line}, offset {offset}: {message}")


class SearchLimitExceeded(RelcompError):
    """Thrown when a search, orbit computation or enumeration exceeds its configured limit."""

    def __init__(self, what: str, limit: int) -> None:
        self.what = what
        self.limit = limit
        super().__init__(f"Limit exceeded for {what} (limit={limit}).")


class PreconditionError(RelcompError):
    """Thrown when the arguments of an operation do not satisfy its precondition."""


class InvariantViolation(RelcompError):
    """Thrown when a produced witness fails its own re-verification."""
