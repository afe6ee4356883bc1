class HgsError(Exception):
    """Base class for errors raised by this package."""


class SpecError(HgsError, ValueError):
    """Malformed or unsupported group specification."""


class CapExceeded(HgsError):
    """A configured resource cap blocks the requested computation."""

    def __init__(self, cap: str, value: int, limit: int, hint: str = ""):
        self.cap, self.value, self.limit = cap, value, limit
        msg = f"{cap}: {value} exceeds limit {limit}"
        super().__init__(msg + (f" ({hint})" if hint else ""))


class InvariantViolation(HgsError, RuntimeError):
    """An internal consistency check failed; indicates a bug, never bad input."""


class PreconditionError(HgsError, ValueError):
    """Inputs violate an operation's stated precondition."""
