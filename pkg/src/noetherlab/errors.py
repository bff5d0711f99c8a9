"""Exception types shared across the library."""


class IncompatibleAlgebras(ValueError):
    """Raised when elements from different algebras are combined."""


class FunctionDomainError(ValueError):
    """Raised when a functional-calculus function is undefined on the spectrum."""


class NotPositiveError(ValueError):
    """Raised when an operation requires a positive element."""


class InvalidDerivationError(ValueError):
    """Raised when a claimed skew derivation fails the Leibniz law."""


class InvalidCorrespondenceError(ValueError):
    """Raised when a dynamical correspondence produces inconsistent output."""


class InternalCheckError(RuntimeError):
    """Raised when a structural identity that should always hold fails."""
