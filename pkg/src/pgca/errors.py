"""Exception types shared across the package."""


class PGCAError(Exception):
    """Base class for all errors raised by pgca."""


class DomainError(PGCAError, ValueError):
    """An operation was applied outside the domain where it is defined."""


class ContextError(PGCAError, ValueError):
    """A vector or generator does not belong to the module context."""


class ParamError(PGCAError, ValueError):
    """A module context is missing a required parameter."""


class ClosureError(PGCAError, ValueError):
    """The requested quotient is not a module for the given homomorphism."""


class StraighteningError(PGCAError, RuntimeError):
    """The rewriting engine ran out of fuel."""


class ParseError(PGCAError, ValueError):
    """Malformed textual input; ``position`` is the offending column."""

    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position
