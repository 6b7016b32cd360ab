"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConstructionError(ValueError):
    """A family member, kernel or parameter vector cannot be built as requested."""
