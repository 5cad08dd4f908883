"""Exact lattice computations for translation automorphisms of supersingular K3 surfaces."""
from .errors import (
    ConsistencyError, DimensionError, InputError, K3SalemError, NotASectionError,
    NotInLatticeError, PreconditionError, SingularMatrixError, UnclassifiedFactorError,
    UnsupportedFiberError,
)

__version__ = "0.1.0"
