"""Exception types shared across the package."""


class MalformedInputError(ValueError):
    """Input has the wrong shape, a symbol out of range, or bad syntax."""


class InfeasibleOrderError(ValueError):
    """Target order is too small to contain the given cube (needs n >= 2m)."""

    def __init__(self, m: int, n: int, witness: str):
        self.m = m
        self.n = n
        self.witness = witness
        super().__init__(
            f"cannot embed order {m} into order {n}: need n >= 2m = {2 * m} ({witness})"
        )


class InternalInvariantError(RuntimeError):
    """A construction step produced data violating its own postcondition."""


class RealizationError(InternalInvariantError):
    """Detachment failed. ``partial`` holds whatever state was built so far."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
