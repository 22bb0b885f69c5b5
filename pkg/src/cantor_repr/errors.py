"""Exception hierarchy shared by every module."""


class CantorError(ValueError):
    """Base class for all errors raised by the package."""


class InvalidInput(CantorError):
    pass


class NotAFiber(CantorError):
    """Elements of a candidate fiber do not share one binary value."""


class EndpointIsNode(CantorError):
    """An arc parameter of 0 or 1 names a node, not an arc-interior point."""


class UnresolvablePath(CantorError):
    pass


class NoMatch(CantorError):
    """A fiber is not the representation of any point of the pattern."""


class PatternError(CantorError):
    """A pattern or query document violates the schema."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class DanglingReference(PatternError):
    pass


class DuplicateArc(PatternError):
    pass


class EmptyCluster(PatternError):
    pass
