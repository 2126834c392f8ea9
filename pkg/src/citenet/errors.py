"""Exception hierarchy shared by the toolkit."""


class CitenetError(Exception):
    """Base class for all toolkit errors."""


class InputError(CitenetError, ValueError):
    """Bad input data: malformed files, out-of-range ids, mismatched sizes."""


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyGraphError(InputError):
    pass


class RefusalError(CitenetError):
    """An algorithm declined to run, e.g. a size cap was exceeded."""


class ConvergenceError(CitenetError):
    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message)
