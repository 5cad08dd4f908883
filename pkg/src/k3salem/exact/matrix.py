"""Exact dense matrices over the integers and rationals.

Entries are Python ``int`` or :class:`fractions.Fraction`; a Fraction with
denominator one is stored as an ``int`` so that equality is canonical.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from ..errors import DimensionError, SingularMatrixError
from .poly import Polynomial


def _norm(x) -> int | Fraction:
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else x
    raise TypeError(f"inexact matrix entry {x!r}")


class Matrix:
    """Immutable rectangular matrix with exact entries."""

    __slots__ = ("_rows", "_shape")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(_norm(x) for x in r) for r in rows)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise DimensionError("ragged rows")
        self._rows = data
        self._shape = (len(data), ncols)

    # construction -----------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> Matrix:
        return cls([[0] * c for _ in range(r)])

    @classmethod
    def diagonal(cls, entries: Sequence) -> Matrix:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> Matrix:
        if not cols:
            raise DimensionError("no columns")
        return cls(zip(*cols))

    # access -----------------------------------------------------------
    @property
    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    @property
    def shape(self) -> tuple[int, int]:
        return self._shape

    @property
    def nrows(self) -> int:
        return self._shape[0]

    @property
    def ncols(self) -> int:
        return self._shape[1]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._rows[i][j] == self._rows[j][i]
            for i in range(self.nrows) for j in range(i))

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for r in self._rows for x in r)

    # arithmetic -------------------------------------------------------
    @property
    def T(self) -> Matrix:
        return Matrix(zip(*self._rows)) if self.nrows else Matrix.zeros(self.ncols, 0)

    def __matmul__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return Matrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows])

    def apply(self, v: Sequence) -> tuple:
        """Matrix times column vector."""
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(_norm(sum(a * b for a, b in zip(r, v))) for r in self._rows)

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __neg__(self) -> Matrix:
        return Matrix([[-a for a in r] for r in self._rows])

    def scale(self, c) -> Matrix:
        return Matrix([[c * a for a in r] for r in self._rows])

    def __pow__(self, k: int) -> Matrix:
        if not self.is_square():
            raise DimensionError("power of a non-square matrix")
        if k < 0:
            return inverse_rational(self) ** (-k)
        result, base = Matrix.identity(self.nrows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def trace(self):
        return sum(self._rows[i][i] for i in range(min(self.shape)))

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix([[self._rows[i][j] for j in cols] for i in rows])

    # protocol ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"Matrix({[list(r) for r in self._rows]!r})"

    def to_json(self) -> list[list[str]]:
        return [[_num_to_str(x) for x in r] for r in self._rows]

    @classmethod
    def from_json(cls, data) -> Matrix:
        if isinstance(data, str):
            data = json.loads(data)
        return cls([[Fraction(x) for x in r] for r in data])


def _num_to_str(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def bilinear(gram: Matrix, u: Sequence, v: Sequence):
    """u^T G v."""
    return _norm(sum(ui * gv for ui, gv in zip(u, gram.apply(v))))


def _require_square(m: Matrix) -> None:
    if not m.is_square():
        raise DimensionError(f"square matrix required, got {m.shape}")


def det_exact(m: Matrix):
    """Determinant by fraction-free (Bareiss) elimination.

    Every division in the recurrence is exact, so integer input stays in
    the integers throughout.
    """
    _require_square(m)
    n = m.nrows
    if n == 0:
        return 1
    a = [list(r) for r in m.rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * piv - a[i][k] * a[k][j]
                a[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
            a[i][k] = 0
        prev = piv
    return _norm(sign * a[n - 1][n - 1])


def _rref(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """In-place reduced row echelon form on the first ``ncols`` columns; returns pivots."""
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def inverse_rational(m: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    _require_square(m)
    n = m.nrows
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(m.rows)]
    if len(_rref(aug, n)) < n:
        raise SingularMatrixError("matrix is singular")
    return Matrix([r[n:] for r in aug])


def solve_rational(m: Matrix, b: Sequence) -> tuple:
    """The unique x with m x = b (m square, nonsingular)."""
    _require_square(m)
    n = m.nrows
    if len(b) != n:
        raise DimensionError("right-hand side has the wrong length")
    aug = [[Fraction(x) for x in r] + [Fraction(bi)] for r, bi in zip(m.rows, b)]
    if len(_rref(aug, n)) < n:
        raise SingularMatrixError("matrix is singular")
    return tuple(_norm(r[n]) for r in aug)


def rank(m: Matrix) -> int:
    rows = [[Fraction(x) for x in r] for r in m.rows]
    return len(_rref(rows, m.ncols))


def kernel(m: Matrix) -> list[tuple]:
    """Basis of the right null space, one rational vector per free column."""
    rows = [[Fraction(x) for x in r] for r in m.rows]
    pivots = _rref(rows, m.ncols)
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][f]
        basis.append(tuple(_norm(x) for x in v))
    return basis


def independent_columns(m: Matrix) -> list[int]:
    """Indices of the first maximal set of linearly independent columns."""
    rows = [[Fraction(x) for x in r] for r in m.rows]
    return _rref(rows, m.ncols)


@dataclass(frozen=True)
class SnfResult:
    diagonal: tuple[int, ...]
    left: Matrix
    right: Matrix


def smith_normal_form(m: Matrix) -> SnfResult:
    """Smith normal form with unimodular transforms, ``left @ m @ right == diag``."""
    if not m.is_integral():
        raise TypeError("Smith normal form needs an integer matrix")
    r, c = m.shape
    a = [list(row) for row in m.rows]
    L = [[int(i == j) for j in range(r)] for i in range(r)]
    R = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row dst += f * row src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        L[dst] = [x + f * y for x, y in zip(L[dst], L[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in R:
            row[dst] += f * row[src]

    diag = []
    for t in range(min(r, c)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, r) for j in range(t, c) if a[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // piv))
                    dirty |= a[i][t] != 0
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // piv))
                    dirty |= a[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            L[t] = [-x for x in L[t]]
        diag.append(a[t][t])
    return SnfResult(tuple(diag), Matrix(L), Matrix(R))


def char_poly_exact(m: Matrix) -> Polynomial:
    """Characteristic polynomial det(xI - m) by Faddeev-LeVerrier.

    For integer input the auxiliary matrices stay integral and each division
    by k is exact; that is asserted rather than assumed.
    """
    _require_square(m)
    n = m.nrows
    a = [list(r) for r in m.rows]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    aux = [[0] * n for _ in range(n)]  # M_0
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prod = [[sum(a[i][l] * aux[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += coeffs[n - k + 1]
        aux = prod
        tr = sum(a[i][l] * aux[l][i] for i in range(n) for l in range(n))
        if isinstance(tr, int):
            q, rem = divmod(-tr, k)
            if rem:
                raise ArithmeticError("non-exact Faddeev-LeVerrier step")
            coeffs[n - k] = q
        else:
            coeffs[n - k] = Fraction(-tr) / k
    return Polynomial(coeffs)
