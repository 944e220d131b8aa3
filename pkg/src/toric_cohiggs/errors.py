"""Exception types shared across the package."""


class SchemaError(ValueError):
    """Raised when an input file or inline object violates a file schema."""


class InternalError(RuntimeError):
    """Raised when an internal invariant that should be unbreakable fails."""
