"""Integral lattices given by their Gram matrix.

Root lattices are negative definite (negated Cartan matrices), which is the
sign convention for fiber components on a surface. Node numbering follows
Bourbaki:

* ``A_n``: chain 1 - 2 - ... - n
* ``D_n``: chain 1 - ... - (n-1), node n attached to n-2
* ``E_n``: chain 1 - 3 - 4 - ... - n, node 2 attached to 4
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce

from .errors import DimensionError, InputError, SingularMatrixError
from .exact import Matrix, det_exact, smith_normal_form


@dataclass(frozen=True)
class IntegerLattice:
    gram: Matrix

    def __post_init__(self):
        if not self.gram.is_symmetric():
            raise InputError("Gram matrix must be square and symmetric")
        if not self.gram.is_integral():
            raise InputError("Gram matrix must be integral")
        if self.rank and self.det == 0:
            raise SingularMatrixError("degenerate bilinear form")

    @property
    def rank(self) -> int:
        return self.gram.nrows

    @cached_property
    def det(self) -> int:
        return det_exact(self.gram)

    def to_json(self) -> dict:
        return {"rank": self.rank, "gram": self.gram.to_json()}


@dataclass(frozen=True)
class DiscriminantGroup:
    """Invariant factors (> 1, each dividing the next) of L*/L."""

    invariant_factors: tuple[int, ...]

    @property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, self.invariant_factors, 1)

    @property
    def length(self) -> int:
        return len(self.invariant_factors)

    def is_trivial(self) -> bool:
        return not self.invariant_factors


def _cartan_edges(kind: str, rank: int) -> list[tuple[int, int]]:
    """0-based edge list of the Dynkin diagram."""
    if kind == "A":
        if rank < 1:
            raise InputError("A_n needs n >= 1")
        return [(i, i + 1) for i in range(rank - 1)]
    if kind == "D":
        if rank < 4:
            raise InputError("D_n needs n >= 4")
        return [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    if kind == "E":
        if rank not in (6, 7, 8):
            raise InputError("E_n exists only for n = 6, 7, 8")
        chain = [0] + list(range(2, rank))
        return list(zip(chain, chain[1:])) + [(1, 3)]
    raise InputError(f"unknown root system type {kind!r}")


def make_root_lattice(kind: str, rank: int | None = None) -> IntegerLattice:
    """Negative definite root lattice, e.g. ``make_root_lattice("E", 7)`` or ``("E7")``."""
    if rank is None:
        kind, rank = kind[0], int(kind[1:])
    kind = kind.upper()
    edges = _cartan_edges(kind, rank)
    g = [[-2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return IntegerLattice(Matrix(g))


def hyperbolic_plane() -> IntegerLattice:
    return IntegerLattice(Matrix([[0, 1], [1, 0]]))


def orthogonal_sum(*lattices: IntegerLattice) -> IntegerLattice:
    n = sum(l.rank for l in lattices)
    g = [[0] * n for _ in range(n)]
    off = 0
    for l in lattices:
        for i in range(l.rank):
            for j in range(l.rank):
                g[off + i][off + j] = l.gram[i, j]
        off += l.rank
    return IntegerLattice(Matrix(g))


def discriminant_group(l: IntegerLattice) -> DiscriminantGroup:
    if l.rank == 0:
        return DiscriminantGroup(())
    snf = smith_normal_form(l.gram)
    return DiscriminantGroup(tuple(d for d in snf.diagonal if d != 1))


def is_p_elementary(l: IntegerLattice, p: int) -> bool:
    return all(p % d == 0 for d in discriminant_group(l).invariant_factors)


def index_relation_check(sub: IntegerLattice, sup: IntegerLattice, index: int) -> bool:
    """det(sub) == index^2 * det(sup) for a finite-index embedding."""
    if sub.rank != sup.rank:
        raise DimensionError(f"rank mismatch: {sub.rank} vs {sup.rank}")
    return sub.det == index * index * sup.det


def signature(l: IntegerLattice | Matrix) -> tuple[int, int]:
    """(positive, negative) inertia via exact symmetric LDL^T.

    A zero pivot is handled by a symmetric swap with a nonzero diagonal
    entry, or, when the whole remaining diagonal vanishes, by replacing
    e_k with e_k + e_j for some j with a nonzero off-diagonal entry.
    """
    g = l.gram if isinstance(l, IntegerLattice) else l
    n = g.nrows
    a = [[Fraction(x) for x in r] for r in g.rows]
    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for r in a:
                    r[k], r[j] = r[j], r[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    raise SingularMatrixError("degenerate form")
                # congruence by e_k -> e_k + e_j
                a[k] = [x + y for x, y in zip(a[k], a[j])]
                for r in a:
                    r[k] += r[j]
        piv = a[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        for i in range(k + 1, n):
            a[i][k] = Fraction(0)
            a[k][i] = Fraction(0)
    return pos, neg
