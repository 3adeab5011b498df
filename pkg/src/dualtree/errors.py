"""Exception types shared across the package."""


class DualtreeError(Exception):
    """Base class for all errors raised by this package."""


class RangeError(DualtreeError, IndexError):
    """A position argument lies outside the valid 1..n range."""


class NotFoundError(DualtreeError, LookupError):
    """A select-style lookup asked for an occurrence that does not exist."""


class ContractError(DualtreeError, ValueError):
    """An operation precondition was violated by the caller."""


class ValidationError(DualtreeError, ValueError):
    """Structured input (tree maps, interval families, weights) is malformed."""


class ParseError(DualtreeError, ValueError):
    """A serialized sequence could not be decoded.

    ``position`` is the 1-based offset of the first offending symbol when known.
    """

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (position {position})")
        self.position = position
