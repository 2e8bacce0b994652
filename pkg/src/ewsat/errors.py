class EwsatError(Exception):
    pass


class UsageError(EwsatError, ValueError):
    """Malformed input or a violated precondition."""


class ParseError(UsageError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class CapacityError(EwsatError):
    """A size guard (n, k, arity) was exceeded; says nothing about feasibility."""
