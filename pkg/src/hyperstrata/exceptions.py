"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class HyperstrataError(Exception):
    exit_code = 1


class DomainError(HyperstrataError, ValueError):
    """Arguments outside the mathematical domain of an operation."""

    exit_code = 2


class StructuralError(HyperstrataError, RuntimeError):
    """A combinatorial structure failed a property it is required to have
    (axiom failure, cyclic shelling order, non-closed complex)."""

    exit_code = 3


class IncompleteError(HyperstrataError, RuntimeError):
    """A numeric search exhausted its budget without a consistent answer.

    ``partial`` carries whatever was computed before giving up.
    """

    exit_code = 4

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ScaleGuardError(DomainError):
    """Refusal to start an enumeration estimated to be too large."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate
