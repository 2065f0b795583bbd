"""Exception types shared across the package."""


class DiracHamError(Exception):
    """Base class for all errors raised by :mod:`diracham`."""


class GraphFormatError(DiracHamError, ValueError):
    """Malformed graph input. ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"byte offset {offset}: {message}")
        self.offset = offset
        self.reason = message


class InfeasibleSpec(DiracHamError, ValueError):
    pass


class PreconditionError(DiracHamError, ValueError):
    """An operation was called outside its documented domain."""


class ContractViolation(DiracHamError, AssertionError):
    """An internal guarantee failed; indicates a bug or a violated theory assertion."""


class Refusal(DiracHamError):
    """The requested computation exceeds a configured size cap."""


class MalformedCertificate(DiracHamError, ValueError):
    """A certificate does not describe a valid object for the given graph."""
