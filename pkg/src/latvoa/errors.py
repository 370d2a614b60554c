"""Error type shared by every module of the package."""

from __future__ import annotations


class VOAError(Exception):
    """An error carrying a stable machine-readable ``code``.

    Codes used across the package include ``DIMENSION_MISMATCH``,
    ``MIXED_CHARGE``, ``ZERO_VECTOR``, ``NONNEGATIVE_MODE``, ``BAD_CHARGE``,
    ``NONINTEGRAL_SHIFT``, ``TAG_MISMATCH``, ``PARSE_ERROR`` and ``UNDECIDED``.
    """

    def __init__(self, code: str, message: str = "", **details):
        super().__init__(f"{code}: {message}" if message else code)
        self.code = code
        self.message = message
        self.details = details

    def to_dict(self) -> dict:
        out = {"error": self.code, "message": self.message}
        out.update({k: v for k, v in self.details.items()})
        return out
