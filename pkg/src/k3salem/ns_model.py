"""Néron-Severi lattice of the supersingular K3 surface X(p), p = 4n + 3.

The surface is y^2 = x^3 + t^3 (t - 1)^2 x. The fixed Z-basis is

    O, F, Q, e4..e10 (III* at t=inf), e11..e17 (III* at t=0),
    e18, e19, e20 (A3 inside the I0* fiber at t=1), e21 = P, e22 = R

with e18 the center of the I0* fiber. Inside each III* fiber the chain
reads e4-e5-e6-e7-e9-e10 with e8 attached to e7 (resp. e11-...-e17 with e15
attached to e14). Four fiber components are not basis members and are
carried as derived classes: ``a_inf`` and ``a0`` (the simple III*
components met by O) and the I0* legs ``d3`` (met by O) and ``d4`` (met
by R).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import InputError, NotInLatticeError, PreconditionError
from .exact import Matrix, bilinear, det_exact, solve_rational
from .lattice import (
    IntegerLattice, discriminant_group, is_p_elementary, signature,
)

BASIS_LABELS: tuple[str, ...] = (
    ("O", "F", "Q") + tuple(f"e{i}" for i in range(4, 21)) + ("P", "R")
)

_FIBER_EDGES = [
    ("e4", "e5"), ("e5", "e6"), ("e6", "e7"), ("e7", "e8"), ("e7", "e9"), ("e9", "e10"),
    ("e11", "e12"), ("e12", "e13"), ("e13", "e14"), ("e14", "e15"), ("e14", "e16"), ("e16", "e17"),
    ("e18", "e19"), ("e18", "e20"),
]
# sections: Q meets e4, e11, e19; P and R both meet e4, P meets e20
_SECTION_EDGES = [("Q", "e4"), ("Q", "e11"), ("Q", "e19"), ("P", "e4"), ("R", "e4"), ("P", "e20")]

# affine E7 marks along the chain (zero end first) and on the branch node
III_STAR_FIBERS = {
    "t=inf": (("a_inf", "e10", "e9", "e7", "e6", "e5", "e4"), "e8"),
    "t=0": (("a0", "e17", "e16", "e14", "e13", "e12", "e11"), "e15"),
}
E7_CHAIN_MARKS = (1, 2, 3, 4, 3, 2, 1)
E7_BRANCH_MARK = 2
I0_STAR_FIBER = ("e18", ("d3", "e19", "e20", "d4"))  # center, legs (zero leg first)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def ns_gram(n: int) -> Matrix:
    """The 22x22 intersection matrix with parameter n (p = 4n + 3)."""
    idx = {l: i for i, l in enumerate(BASIS_LABELS)}
    g = [[0] * 22 for _ in range(22)]

    def put(a, b, v):
        g[idx[a]][idx[b]] = g[idx[b]][idx[a]] = v

    for lab in BASIS_LABELS:
        if lab != "F":
            put(lab, lab, -2)
    for a, b in _FIBER_EDGES + _SECTION_EDGES:
        put(a, b, 1)
    for s in ("O", "Q", "P", "R"):
        put(s, "F", 1)
    for s in ("O", "Q"):
        put(s, "P", n)
        put(s, "R", n)
    put("P", "R", 2 * n)
    return Matrix(g)


@dataclass(frozen=True)
class LatticeModel:
    """A labelled Z-basis of a surface lattice together with its Gram matrix."""

    labels: tuple[str, ...]
    gram: Matrix

    @cached_property
    def lattice(self) -> IntegerLattice:
        return IntegerLattice(self.gram)

    @property
    def rank(self) -> int:
        return self.gram.nrows

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def unit(self, label: str) -> tuple[int, ...]:
        v = [0] * self.rank
        v[self.index(label)] = 1
        return tuple(v)

    def pair(self, u: Sequence, v: Sequence):
        return bilinear(self.gram, u, v)

    def vector(self, coeffs: dict[str, int]) -> tuple[int, ...]:
        v = [0] * self.rank
        for lab, c in coeffs.items():
            v[self.index(lab)] += c
        return tuple(v)


@dataclass(frozen=True)
class NSModel(LatticeModel):
    p: int = 0
    n: int = 0

    @cached_property
    def artin_invariant(self) -> int | None:
        """sigma with det = -p^(2 sigma), or None if det is not of that shape."""
        d = -self.lattice.det
        sigma = 0
        while d > 1 and d % self.p == 0:
            d //= self.p
            sigma += 1
        return sigma // 2 if d == 1 and sigma % 2 == 0 and sigma else None


def build_ns_model(p: int) -> NSModel:
    if not isinstance(p, int) or not is_prime(p):
        raise InputError(f"p = {p!r} is not a prime")
    if p % 4 != 3:
        raise PreconditionError(
            f"p = {p} is not inert in Q(sqrt(-1)) (Legendre(-1|p) = 1 or p = 2); "
            "X(p) is the Artin-invariant-one surface only for p = 3 mod 4")
    n = (p - 3) // 4
    return NSModel(BASIS_LABELS, ns_gram(n), p=p, n=n)


def class_from_intersections(model, pairings: Sequence[int]) -> tuple[int, ...]:
    """The class v with Gram v = pairings; raises if v is not integral."""
    v = solve_rational(model.gram, pairings)
    if not all(isinstance(x, int) for x in v):
        raise NotInLatticeError(f"pairings {list(pairings)} define a non-integral class {v}")
    return v


@dataclass(frozen=True)
class CurveRecord:
    label: str
    cls: tuple[int, ...]
    kind: str  # "fiber-component" | "section" | "other"
    fiber: str | None = None
    multiplicity: int | None = None


def curve_table(model: NSModel) -> list[CurveRecord]:
    """The (-2)-curves known on X(p): 21 fiber components and O, Q, P, R.

    Basis curves come first in basis order, derived components after.
    """
    F = model.unit("F")
    records: dict[str, tuple[str, int]] = {}
    derived: dict[str, tuple[int, ...]] = {}

    for fiber, (chain, branch) in III_STAR_FIBERS.items():
        marks = dict(zip(chain, E7_CHAIN_MARKS))
        marks[branch] = E7_BRANCH_MARK
        missing = chain[0]
        rest = model.vector({lab: m for lab, m in marks.items() if lab != missing})
        derived[missing] = tuple(f - r for f, r in zip(F, rest))
        for lab, m in marks.items():
            records[lab] = (fiber, m)

    # d4 pairs to 1 with e18 and R and to 0 with every other basis element
    pd4 = [0] * model.rank
    pd4[model.index("e18")] = pd4[model.index("R")] = 1
    d4 = class_from_intersections(model, pd4)
    center, legs = I0_STAR_FIBER
    d3 = tuple(f - 2 * c - a - b - d for f, c, a, b, d in zip(
        F, model.unit(center), model.unit("e19"), model.unit("e20"), d4))
    derived["d3"], derived["d4"] = d3, d4
    records[center] = ("t=1", 2)
    for leg in legs:
        records[leg] = ("t=1", 1)

    out = []
    for lab in model.labels:
        if lab in ("O", "Q", "P", "R"):
            out.append(CurveRecord(lab, model.unit(lab), "section"))
        elif lab in records:
            fib, m = records[lab]
            out.append(CurveRecord(lab, model.unit(lab), "fiber-component", fib, m))
    for lab in ("a_inf", "a0", "d3", "d4"):
        fib, m = records[lab]
        out.append(CurveRecord(lab, derived[lab], "fiber-component", fib, m))
    return out


@dataclass(frozen=True)
class CurveGraph:
    """Dual graph of known curves; edge weights are intersection numbers."""

    vertices: tuple[CurveRecord, ...]
    edges: dict[tuple[int, int], int] = field(hash=False)

    @property
    def labels(self) -> list[str]:
        return [v.label for v in self.vertices]

    def weight(self, i: int, j: int) -> int:
        return self.edges.get((min(i, j), max(i, j)), 0)

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(len(self.vertices)) if j != i and self.weight(i, j)]


def curve_graph(model: LatticeModel, records: Sequence[CurveRecord] | None = None) -> CurveGraph:
    records = tuple(records if records is not None else curve_table(model))
    edges = {}
    for i, a in enumerate(records):
        for j in range(i + 1, len(records)):
            w = model.pair(a.cls, records[j].cls)
            if w:
                edges[(i, j)] = w
    return CurveGraph(records, edges)


@dataclass
class NSReport:
    p: int
    det: int
    signature: tuple[int, int]
    invariant_factors: tuple[int, ...]
    artin_invariant: int | None
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def verify_ns_model(model: NSModel) -> NSReport:
    """Run the lattice checks; failures are recorded, never raised."""
    p, g = model.p, model.gram
    det = det_exact(g)
    checks = {"symmetric": g.is_symmetric(), "det = -p^2": det == -p * p}
    sig, factors, sigma = (0, 0), (), None
    if checks["symmetric"] and det != 0:
        lat = IntegerLattice(g)
        disc = discriminant_group(lat)
        sig, factors = signature(lat), disc.invariant_factors
        sigma = model.artin_invariant
        checks.update({
            "p-elementary": is_p_elementary(lat, p),
            "discriminant length 2": disc.length == 2,
            "signature (1,21)": sig == (1, 21),
            "artin invariant 1": sigma == 1,
        })
    else:
        checks["nondegenerate symmetric form"] = False
    return NSReport(p, det, sig, factors, sigma, checks)


def ns_summary(model: NSModel) -> dict:
    """JSON payload of ``ns build``."""
    rep = verify_ns_model(model)
    return {
        "p": model.p,
        "n": model.n,
        "labels": list(model.labels),
        "gram": model.gram.to_json(),
        "det": str(rep.det),
        "signature": list(rep.signature),
        "invariantFactors": [str(d) for d in rep.invariant_factors],
        "artinInvariant": rep.artin_invariant,
        "checks": rep.checks,
    }


__all__ = [
    "BASIS_LABELS", "LatticeModel", "NSModel", "CurveRecord", "CurveGraph", "NSReport",
    "build_ns_model", "class_from_intersections", "curve_table", "curve_graph",
    "verify_ns_model", "ns_gram", "ns_summary", "is_prime",
]
