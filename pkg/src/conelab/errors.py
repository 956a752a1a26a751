class ConelabError(Exception):
    """Base class for every error raised by conelab."""


class InputError(ConelabError, ValueError):
    """Malformed or mismatched input (wrong dimension, bad file, unknown name)."""


class InconsistentDataError(ConelabError, ValueError):
    """Declared data contradicts itself (e.g. Betti numbers forcing a negative rank)."""


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
