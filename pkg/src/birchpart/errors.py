"""Exception hierarchy shared by every module."""


class BirchError(Exception):
    """Base class for all library errors."""


class InvalidInput(BirchError, ValueError):
    pass


class DegenerateSimplex(BirchError, ValueError):
    pass


class SingularGenerators(BirchError, ValueError):
    pass


class NotGeneralPosition(BirchError, ValueError):
    pass


class SizeMismatch(BirchError, ValueError):
    pass


class NotPrimePower(BirchError, ValueError):
    pass


class UnclassifiablePartition(BirchError):
    pass


class InconsistencyDetected(BirchError):
    """A property guaranteed by the counting theorems failed to hold.

    Either the enumeration is wrong or a degenerate input slipped through
    validation; both deserve a loud failure.
    """


class ExhaustedRetries(BirchError, RuntimeError):
    pass


class ParseError(BirchError, ValueError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        if where:
            message = f"{', '.join(where)}: {message}"
        super().__init__(message)
