"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class BallViolation(DomainError):
    """The field is outside the ball ``S[a, d] ||f||_a < r`` of the model."""
