"""Integer isometries of a lattice, checked on construction."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ConsistencyError, DimensionError
from .exact import Matrix, det_exact, inverse_rational


@dataclass(frozen=True)
class Isometry:
    """Integer matrix M (acting on column vectors) with M^T G M = G."""

    matrix: Matrix
    gram: Matrix

    def __post_init__(self):
        m, g = self.matrix, self.gram
        if m.shape != g.shape:
            raise DimensionError(f"isometry {m.shape} for Gram {g.shape}")
        if not m.is_integral():
            raise ConsistencyError("isometry matrix is not integral")
        if m.T @ g @ m != g:
            raise ConsistencyError("matrix does not preserve the intersection form")

    @classmethod
    def identity(cls, gram: Matrix) -> Isometry:
        return cls(Matrix.identity(gram.nrows), gram)

    def __matmul__(self, other: Isometry) -> Isometry:
        if self.gram != other.gram:
            raise DimensionError("isometries of different lattices")
        return Isometry(self.matrix @ other.matrix, self.gram)

    def inverse(self) -> Isometry:
        return Isometry(inverse_rational(self.matrix), self.gram)

    def __call__(self, v):
        return self.matrix.apply(v)

    @property
    def det(self) -> int:
        return det_exact(self.matrix)
