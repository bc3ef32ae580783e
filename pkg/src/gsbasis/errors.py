class InvalidInput(ValueError):
    """Raised when an argument violates a documented input contract."""


class PreconditionError(ValueError):
    """Raised when the hypotheses of a check do not hold.

    Kept distinct from a ``False`` answer so callers can tell "the claim
    fails" apart from "the claim does not apply".
    """


class ResourceLimit(RuntimeError):
    """Raised when a search exceeds its configured size guard."""
