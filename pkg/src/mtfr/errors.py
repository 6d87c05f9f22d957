"""Exception hierarchy. Every error carries a stable ``code`` string."""

from __future__ import annotations


class MTFRError(Exception):
    code = "ERROR"

    def __init__(self, message: str = "", code: str | None = None) -> None:
        super().__init__(message)
        if code is not None:
            self.code = code


class ParseError(MTFRError):
    """Raised by the topology parser; ``code`` is SYNTAX, SCHEMA or INVARIANT."""

    code = "SYNTAX"


class NotStarError(MTFRError):
    code = "NOT_STAR"


class NotBidirectionalError(MTFRError):
    code = "NOT_BIDIRECTIONAL"


class NotUnidirectionalError(MTFRError):
    code = "NOT_UNIDIRECTIONAL"


class InvalidRemovalError(MTFRError):
    code = "INVALID_REMOVAL"


class TooLargeError(MTFRError):
    code = "TOO_LARGE"


class TruncatedInputError(MTFRError):
    code = "TRUNCATED_INPUT"


class EmptyResultError(MTFRError):
    code = "EMPTY_RESULT"
