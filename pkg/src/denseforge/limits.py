"""Safety valve for exhaustive searches.

Every unbounded-looking enumeration in the package counts candidates against
a global cap, read from the FORGE_MAX_WIDTH environment variable.
"""

import os

DEFAULT_MAX_WIDTH = 1 << 22


class SearchWidthError(RuntimeError):
    """An exhaustive search exceeded the configured width cap."""


def max_width() -> int:
    raw = os.environ.get("FORGE_MAX_WIDTH")
    if raw is None:
        return DEFAULT_MAX_WIDTH
    try:
        value = int(raw)
    except ValueError as exc:
        raise SearchWidthError(f"FORGE_MAX_WIDTH is not an integer: {raw!r}") from exc
    if value <= 0:
        raise SearchWidthError(f"FORGE_MAX_WIDTH must be positive, got {value}")
    return value


class WidthBudget:
    """Counts candidates examined by one search; raises when the cap is hit."""

    def __init__(self, what: str):
        self.what = what
        self.cap = max_width()
        self.used = 0

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.cap:
            raise SearchWidthError(
                f"{self.what}: exceeded FORGE_MAX_WIDTH ({self.cap} candidates)"
            )
