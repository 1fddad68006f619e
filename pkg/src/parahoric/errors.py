"""Exception types shared across the package."""


class DomainError(ValueError):
    """A precondition or contract of a domain operation was violated.

    ``code`` is a short machine-readable identifier surfaced by the CLI.
    """

    def __init__(self, message: str, code: str = "precondition"):
        super().__init__(message)
        self.code = code


class ContractViolation(DomainError):
    def __init__(self, message: str):
        super().__init__(message, code="contract")


class EnclosureFault(RuntimeError):
    """An enclosure oracle failed to separate a nonzero value from zero."""
