"""Exception types shared across the package."""


class StructureError(ValueError):
    """Input is malformed (unknown vertex, bad tau entry, duplicate id...)."""


class DomainError(ValueError):
    """Arguments are well formed but outside the operation's domain."""


class ResourceError(RuntimeError):
    """Computation refused because it exceeds the configured resource guard."""


class PreconditionError(ValueError):
    """Input fails a checked precondition; ``report`` holds the evidence."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
