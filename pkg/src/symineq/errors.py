"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class DegenerateInputError(DomainError):
    """A normalizer vanishes, so the term-normalized form is undefined."""


class DivisibilityError(ArithmeticError):
    """Raised by exact division when the divisor does not divide the dividend."""

    def __init__(self, remainder, message=None):
        self.remainder = remainder
        super().__init__(message or f"not exactly divisible; remainder {remainder}")
