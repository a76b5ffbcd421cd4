"""Exception types shared by every module."""


class BicircularError(Exception):
    pass


class InvalidInput(BicircularError, ValueError):
    """An argument does not satisfy an operation's precondition."""


class InvalidOperation(BicircularError, ValueError):
    """A structural precondition of a graph move or minor is not met."""


class ResourceLimit(BicircularError):
    """A configured size cap or search budget was exceeded."""


class NotFound(BicircularError, KeyError):
    pass


class ParseError(BicircularError, ValueError):
    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip())
