"""Exception types shared across the package."""


class ValidationError(ValueError):
    """A parameter violates an operation's precondition.

    Messages always name the offending parameter so the CLI can surface
    the violated precondition verbatim.
    """


class NonInvertibleError(ValidationError):
    """Negative iteration count requested for a non-invertible map."""


class CacheFormatError(ValidationError):
    """A sieve cache file fails magic or length validation."""
