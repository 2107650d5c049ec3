"""Exception hierarchy shared by every module."""


class SpliceError(Exception):
    """Base class for all errors raised by splice_forge."""


class DiagramSyntaxError(SpliceError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class InvalidDiagramError(SpliceError):
    """The diagram violates a structural rule (see ``validate``)."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class PreconditionError(SpliceError):
    """An operation was called outside its domain."""


class NotFiberedError(PreconditionError):
    def __init__(self, message, l_values=None):
        self.l_values = l_values or {}
        super().__init__(message)


class NotCoprimeError(SpliceError, ValueError):
    pass


class GlueError(SpliceError):
    """No monotone clockwise collar curve joins the two boundary points."""
