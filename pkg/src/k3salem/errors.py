"""Exception hierarchy.

Everything raised on purpose by the package derives from :class:`K3SalemError`,
so callers (the CLI in particular) can separate bad input from internal bugs.
"""


class K3SalemError(Exception):
    """Base class for all package errors."""


class InputError(K3SalemError, ValueError):
    """Malformed or out-of-range input (non-prime p, empty interval, ...)."""


class PreconditionError(K3SalemError, ValueError):
    """Input is well formed but violates a mathematical precondition."""


class DimensionError(K3SalemError, ValueError):
    """Matrix shapes do not fit the requested operation."""


class SingularMatrixError(K3SalemError, ArithmeticError):
    pass


class NotInLatticeError(K3SalemError, ValueError):
    """A rational class has no integral representative in the lattice."""


class NotASectionError(K3SalemError, ValueError):
    pass


class UnsupportedFiberError(K3SalemError, ValueError):
    pass


class ConsistencyError(K3SalemError, RuntimeError):
    """An internal cross-check failed. Signals a bug, never bad input."""


class UnclassifiedFactorError(ConsistencyError):
    """A non-cyclotomic factor without Salem root shape was found."""
