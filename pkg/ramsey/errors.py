"""
Exception hierarchy shared by every module.

Soft outcomes (no embedding found, oracle budget exhausted, a pipeline stage
that cannot proceed) are returned as values. Exceptions are reserved for bad
input and for states the underlying combinatorics rules out.
"""


class RamseyError(Exception):
    """Base class for all library errors."""


class FormatError(RamseyError, ValueError):
    """Malformed coloring, tree or certificate input."""


class PreconditionError(RamseyError, ValueError):
    """An operation was called outside its parameter domain."""


class InvariantViolation(RamseyError):
    """A state that a correct pipeline can never reach.

    Carries the pipeline stage so opportunistic callers can turn it into a
    Failure certificate.
    """

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.message = message
