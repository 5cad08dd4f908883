"""Elliptic fibrations on a lattice model: sections, heights, translations."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

from ..errors import ConsistencyError, InputError, NotASectionError
from ..exact import (
    Matrix, bilinear, independent_columns, inverse_rational, solve_rational,
)
from ..isometry import Isometry
from ..lattice import IntegerLattice, hyperbolic_plane, make_root_lattice, orthogonal_sum
from .kodaira import KodairaFiber, local_contribution, translation_permutation


@dataclass(frozen=True)
class FibrationData:
    """Fiber class F, zero section O and the reducible fibers, inside a lattice.

    ``sections`` lists known section classes other than O; they are needed
    (together with the fibers) to pin down translation isometries.
    ``chi`` is the Euler characteristic of the structure sheaf, so sections
    have self-intersection -chi and the fiber Euler numbers sum to 12 chi.
    """

    name: str
    gram: Matrix
    fiber_class: tuple
    zero_section: tuple
    fibers: tuple[KodairaFiber, ...]
    chi: int = 2
    zero_label: str = "O"
    sections: tuple[tuple[str, tuple], ...] = ()

    def pair(self, u, v):
        return bilinear(self.gram, u, v)

    @property
    def visible_euler(self) -> int:
        return sum(f.euler for f in self.fibers)

    @property
    def irreducible_euler(self) -> int:
        """Euler number left over for the irreducible singular fibers."""
        return 12 * self.chi - self.visible_euler

    def section(self, label: str) -> tuple:
        if label == self.zero_label:
            return self.zero_section
        for lab, cls in self.sections:
            if lab == label:
                return cls
        raise KeyError(f"{label!r} is not a known section of {self.name}")

    def summary(self) -> dict:
        return {
            "name": self.name,
            "zeroSection": self.zero_label,
            "fiberClass": [str(x) for x in self.fiber_class],
            "fibers": [
                {"type": f.kind, "position": f.position, "components": list(f.components),
                 "multiplicities": f.multiplicities, "hidden": list(f.hidden)}
                for f in self.fibers
            ],
            "eulerVisible": self.visible_euler,
            "eulerIrreducible": self.irreducible_euler,
            "sections": [lab for lab, _ in self.sections],
        }


@dataclass(frozen=True)
class SectionClass:
    cls: tuple
    components: tuple[int, ...]  # per fiber: index of the simple component met
    label: str | None = None


def trivial_lattice_of(f: FibrationData) -> IntegerLattice:
    parts = [hyperbolic_plane()]
    for fib in f.fibers:
        fam, r = fib.root_type
        parts.append(make_root_lattice(fam, r))
    return orthogonal_sum(*parts)


def _add(u, v, c=1):
    return tuple(a + c * b for a, b in zip(u, v))


def as_section(D: Sequence, f: FibrationData, label: str | None = None) -> SectionClass:
    """Validate that D is a section class of f and record the components it meets."""
    D = tuple(D)
    if f.pair(D, f.fiber_class) != 1:
        raise NotASectionError(f"{label or D}: D.F = {f.pair(D, f.fiber_class)}, expected 1")
    if f.pair(D, D) != -f.chi:
        raise NotASectionError(f"{label or D}: D^2 = {f.pair(D, D)}, expected {-f.chi}")
    comps = []
    for fib in f.fibers:
        hits = [(i, f.pair(D, c)) for i, c in enumerate(fib.classes) if f.pair(D, c)]
        if len(hits) != 1 or hits[0][1] != 1 or hits[0][0] not in fib.simple_indices:
            raise NotASectionError(f"{label or D} meets fiber {fib.kind} in {hits}")
        comps.append(hits[0][0])
    return SectionClass(D, tuple(comps), label)


@lru_cache(maxsize=256)
def _block_inverse(fib: KodairaFiber, gram: Matrix) -> Matrix:
    """Inverse Gram matrix of the non-zero components of a fiber (negative definite)."""
    nz = [c for i, c in enumerate(fib.classes) if i != fib.zero_index]
    return inverse_rational(Matrix([[bilinear(gram, a, b) for b in nz] for a in nz]))


def reduce_to_section(D: Sequence, f: FibrationData, label: str | None = None) -> SectionClass:
    """The unique section class congruent to D modulo the trivial lattice.

    D is shifted by -(D.F - 1) O, then each fiber gets the integral
    correction in the span of its non-zero components that makes D meet one
    simple component, and finally a multiple of F fixes D^2 = -chi.
    """
    D = tuple(D)
    F, O = f.fiber_class, f.zero_section
    d = f.pair(D, F)
    if d < 1:
        raise NotASectionError(f"D.F = {d} < 1")
    D = _add(D, O, -(d - 1))
    for fib in f.fibers:
        nz = [i for i in range(len(fib.classes)) if i != fib.zero_index]
        inv = _block_inverse(fib, f.gram)
        cur = [f.pair(D, fib.classes[i]) for i in nz]
        found = []
        for target in [None] + [s for s in fib.simple_indices if s != fib.zero_index]:
            rhs = [(1 if i == target else 0) - c for i, c in zip(nz, cur)]
            x = inv.apply(rhs)
            if all(Fraction(v).denominator == 1 for v in x):
                found.append([int(v) for v in x])
        if len(found) != 1:
            raise NotASectionError(
                f"class is not a section modulo triv: {len(found)} integral corrections on {fib.kind}")
        for i, c in zip(nz, found[0]):
            D = _add(D, fib.classes[i], c)
    k2 = -f.chi - f.pair(D, D)
    if k2 % 2:
        raise NotASectionError("cannot reach the section self-intersection by adding fibers")
    D = _add(D, F, k2 // 2)
    return as_section(D, f, label)


def height_pairing(P: SectionClass, Q: SectionClass, f: FibrationData) -> Fraction:
    """chi + P.O + Q.O - P.Q - sum of local contributions."""
    O = f.zero_section
    h = Fraction(f.chi + f.pair(P.cls, O) + f.pair(Q.cls, O) - f.pair(P.cls, Q.cls))
    for fib, i, j in zip(f.fibers, P.components, Q.components):
        h -= local_contribution(fib, i, j)
    return h


def _triv_basis(f: FibrationData) -> list[tuple]:
    basis = [f.zero_section, f.fiber_class]
    for fib in f.fibers:
        basis += [c for i, c in enumerate(fib.classes) if i != fib.zero_index]
    return basis


def height_by_projection(P: SectionClass, Q: SectionClass, f: FibrationData) -> Fraction:
    """Minus the pairing of the projections of P - O, Q - O onto triv^perp."""
    basis = _triv_basis(f)
    g = Matrix([[f.pair(a, b) for b in basis] for a in basis])

    def phi(S):
        v = _add(S.cls, f.zero_section, -1)
        x = solve_rational(g, [f.pair(b, v) for b in basis])
        out = list(v)
        for coef, b in zip(x, basis):
            out = [o - coef * bi for o, bi in zip(out, b)]
        return out

    return Fraction(-f.pair(phi(P), phi(Q)))


def translation_pushforward(S: SectionClass, f: FibrationData) -> Isometry:
    """Matrix of (+S)_* on the lattice basis.

    Fixes F, permutes the components of every fiber by the component-group
    translation, and sends each known section X to the section X + S. The
    matrix is solved from these images and must come out integral and
    isometric.
    """
    src, img = [f.fiber_class], [f.fiber_class]
    for fib, s in zip(f.fibers, S.components):
        perm = translation_permutation(fib, s)
        for i, c in enumerate(fib.classes):
            src.append(c)
            img.append(fib.classes[perm[i]])
    O = f.zero_section
    for X in [O] + [cls for _, cls in f.sections]:
        src.append(X)
        img.append(reduce_to_section(_add(_add(X, S.cls), O, -1), f).cls)
    B = Matrix.from_columns(src)
    cols = independent_columns(B)
    if len(cols) != f.gram.nrows:
        raise ConsistencyError(f"{f.name}: known curves span rank {len(cols)} < {f.gram.nrows}")
    Bs = Matrix.from_columns([src[c] for c in cols])
    Is = Matrix.from_columns([img[c] for c in cols])
    M = Is @ inverse_rational(Bs)
    if M @ B != Matrix.from_columns(img):
        raise ConsistencyError(f"{f.name}: translation images are not linear")
    iso = Isometry(M, f.gram)  # raises unless integral and isometric
    if iso(f.fiber_class) != tuple(f.fiber_class):
        raise ConsistencyError("translation moved the fiber class")
    return iso


def translation_isometry(S: SectionClass, f: FibrationData) -> Isometry:
    """Pullback (+S)^* = ((+S)_*)^-1."""
    return translation_pushforward(S, f).inverse()


def fibration_from_curves(model, records, fiber_class: Sequence, zero_label: str,
                          name: str, chi: int = 2, kinds: dict | None = None,
                          positions: bool = True) -> FibrationData:
    """Assemble an elliptic fibration from the known curves of a lattice model.

    Curves orthogonal to F are grouped into connected configurations. Affine
    ones are complete fibers; a finite Dynkin configuration is completed by a
    single hidden component when exactly one completion is consistent.
    Curves with C.F = 1 become sections; those with C.F > 1 contribute their
    induced sections. ``positions`` says whether the records' fiber
    positions refer to this fibration (they are inherited otherwise).
    """
    from .configs import complete_configuration  # local: configs imports this module

    F = tuple(fiber_class)
    pair = model.pair
    by_label = {r.label: r for r in records}
    if zero_label not in by_label:
        raise InputError(f"unknown zero section {zero_label!r}")
    O = by_label[zero_label].cls
    if pair(O, F) != 1:
        raise InputError(f"{zero_label} is not a section of {name}")
    vertical = [r for r in records if pair(r.cls, F) == 0]
    groups: list[list] = []
    seen: set[str] = set()
    for r in vertical:
        if r.label in seen:
            continue
        group, stack = [], [r]
        seen.add(r.label)
        while stack:
            cur = stack.pop()
            group.append(cur)
            for o in vertical:
                if o.label not in seen and pair(cur.cls, o.cls):
                    seen.add(o.label)
                    stack.append(o)
        order = {r.label: i for i, r in enumerate(records)}
        groups.append(sorted(group, key=lambda x: order[x.label]))
    kinds = kinds or {}
    from .kodaira import build_fiber

    fibers = []
    for k, group in enumerate(groups):
        labels = [g.label for g in group]
        classes = [g.cls for g in group]
        hidden = []
        h = complete_configuration(model, classes, F, records)
        if h is not None:
            hidden = [f"{name}.h{k + 1}"]
            labels.append(hidden[0])
            classes.append(h)
        position = None
        if positions:
            places = {g.fiber for g in group}
            position = places.pop() if len(places) == 1 and None not in places else None
        fibers.append(build_fiber(labels, classes, pair, O, kind=kinds.get(position),
                                  position=position, hidden=hidden))
    fib = FibrationData(name, model.gram, F, O, tuple(fibers), chi, zero_label)
    if fib.irreducible_euler < 0:
        raise ConsistencyError(f"{name}: fiber Euler numbers exceed {12 * chi}")
    sections = []
    for r in records:
        if r.label == zero_label:
            continue
        d = pair(r.cls, F)
        if d == 1:
            sections.append((r.label, as_section(r.cls, fib, r.label).cls))
        elif d > 1:
            sections.append((r.label, reduce_to_section(r.cls, fib, r.label).cls))
    return FibrationData(name, model.gram, F, O, tuple(fibers), chi, zero_label, tuple(sections))
