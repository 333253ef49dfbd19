"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` so the CLI can map
failures to exit codes and tests can assert on the failure kind without
string matching.
"""

from __future__ import annotations


class MultifacError(Exception):
    """Base class for all package errors."""

    default_code = "ERROR"

    def __init__(self, message: str, *, code: str | None = None):
        super().__init__(message)
        self.code = code or self.default_code


class ValidationError(MultifacError):
    """Invalid input: bad instance data, unknown names, out-of-range values."""

    default_code = "INVALID"


class ParseError(ValidationError):
    """A document could not be parsed; ``field`` names the offending entry."""

    default_code = "PARSE_ERROR"

    def __init__(self, message: str, *, field: str | None = None):
        where = f"{field}: " if field else ""
        super().__init__(f"{where}{message}", code="PARSE_ERROR")
        self.field = field


class CapExceeded(MultifacError):
    """A resource cap (enumeration size, committee count, voter count) was hit."""

    default_code = "CAP_EXCEEDED"
