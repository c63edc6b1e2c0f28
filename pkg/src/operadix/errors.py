class OperadixError(Exception):
    pass


class CategoryMismatch(OperadixError):
    pass


class TruncationError(OperadixError):
    """An operation needed an arity or weight beyond the declared caps."""


class SchemaError(OperadixError):
    """Malformed input data (JSON or constructor arguments)."""


class DescentError(OperadixError):
    """A structure map failed to pass to a quotient."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class StabilizationError(OperadixError):
    pass


class CapGuardError(OperadixError):
    """A brute-force enumeration would exceed the configured size guard."""
