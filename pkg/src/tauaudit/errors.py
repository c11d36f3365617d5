"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ResourceError(RuntimeError):
    """A configured memory or operation budget would be exceeded."""


class UnavailableError(RuntimeError):
    """A value cannot be produced within the given effort budget."""


class ConsistencyError(AssertionError):
    """An internal exactness check failed; indicates a bug, never bad input."""
