"""Exception types shared across sdepthkit."""


class SdepthError(Exception):
    """Base class for all errors raised by sdepthkit."""


class RingMismatchError(SdepthError, ValueError):
    """Monomials or ideals living in different rings were combined."""


class HypothesisError(SdepthError, ValueError):
    """An input does not satisfy the hypotheses an operation requires."""


class ResourceLimitError(SdepthError, RuntimeError):
    """A computation would exceed a configured size or time cap."""


class GrammarError(SdepthError, ValueError):
    """Text could not be parsed; ``position`` is the 0-based offset."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
