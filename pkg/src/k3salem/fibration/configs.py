"""Extended Dynkin configurations of (-2)-curves and the fibrations they induce."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..errors import ConsistencyError, InputError
from ..exact import Matrix
from .kodaira import affine_marks, classify_diagram, kodaira_kind
from .sections import FibrationData, SectionClass, fibration_from_curves, reduce_to_section


@dataclass(frozen=True)
class AdeConfig:
    labels: tuple[str, ...]
    indices: tuple[int, ...]  # vertex indices in the curve graph
    diagram: str  # e.g. "A~15"
    kind: str  # Kodaira symbol of the fiber it spans
    marks: tuple[int, ...]
    fiber_class: tuple[int, ...]
    square_zero: bool

    def to_json(self) -> dict:
        return {
            "diagram": self.diagram,
            "type": self.kind,
            "curves": list(self.labels),
            "marks": list(self.marks),
            "fiberClass": [str(x) for x in self.fiber_class],
            "fiberSquareZero": self.square_zero,
        }


def _connected_subsets(nv: int, adj: list[list[int]], accept):
    """Yield each connected vertex set once; ``accept(set)`` decides if it may grow.

    Standard extension-set enumeration: a subset is grown only by
    neighbours with larger index than its root that are not already
    adjacent to earlier members, which makes every set appear exactly once.
    """
    out = []

    def extend(sub: list[int], ext: set[int], root: int, closed: set[int]):
        ext = set(ext)
        while ext:
            w = ext.pop()
            new = sub + [w]
            status = accept(new)
            if status is None:
                continue
            out.append((tuple(new), status))
            if status == "grow":
                fresh = {u for u in adj[w] if u > root and u not in closed}
                extend(new, ext | fresh, root, closed | set(adj[w]) | {w})

    for v in range(nv):
        status = accept([v])
        if status is None:
            continue
        out.append(((v,), status))
        nb = {u for u in adj[v] if u > v}
        extend([v], nb, v, set(adj[v]) | {v})
    return out


def find_ade_configurations(graph, model) -> list[AdeConfig]:
    """All curve subsets forming an extended Dynkin diagram, with their fiber classes."""
    nv = len(graph.vertices)
    adj = [graph.neighbors(i) for i in range(nv)]
    types: dict[tuple[int, ...], object] = {}

    def accept(sub):
        t = classify_diagram(len(sub), lambda i, j: graph.weight(sub[i], sub[j]))
        if t is None:
            return None
        types[tuple(sub)] = t
        return "stop" if t.affine else "grow"

    found = {}
    for sub, status in _connected_subsets(nv, adj, accept):
        if status != "stop":
            continue
        key = tuple(sorted(sub))
        if key in found:
            continue
        t = types[sub]
        block = Matrix([[graph.weight(a, b) if a != b else -2 for b in key] for a in key])
        marks = affine_marks(block)
        F = [0] * model.rank
        for m, i in zip(marks, key):
            F = [f + m * c for f, c in zip(F, graph.vertices[i].cls)]
        F = tuple(F)
        found[key] = AdeConfig(
            labels=tuple(graph.vertices[i].label for i in key),
            indices=key,
            diagram=t.name,
            kind=kodaira_kind(t),
            marks=marks,
            fiber_class=F,
            square_zero=model.pair(F, F) == 0,
        )
    return sorted(found.values(), key=lambda c: (-len(c.indices), c.labels))


def complete_configuration(model, classes: Sequence[tuple], F: Sequence, records) -> tuple | None:
    """The missing component of a fiber whose visible part is a finite Dynkin diagram.

    Returns None when the visible curves already form an extended diagram.
    Otherwise every way of attaching one extra node (to one vertex, to two
    vertices, or doubly to a single vertex) is tried; a candidate survives if
    the result is extended Dynkin and the class (F - sum m_i C_i)/m_h is an
    integral (-2)-class with the prescribed intersections, orthogonal to F
    and meeting every other known curve non-negatively.
    """
    pair = model.pair
    n = len(classes)
    w = [[pair(classes[i], classes[j]) for j in range(n)] for i in range(n)]
    t = classify_diagram(n, lambda i, j: w[i][j])
    if t is None:
        raise ConsistencyError("vertical curves do not form a Dynkin configuration")
    if t.affine:
        return None
    patterns = [{i: 1} for i in range(n)] + [{i: 2} for i in range(n)]
    patterns += [{i: 1, j: 1} for i, j in combinations(range(n), 2)]
    known = {tuple(r.cls) for r in records}
    sols = set()
    for pat in patterns:
        ext = [row + [pat.get(i, 0)] for i, row in enumerate(w)] + [[pat.get(j, 0) for j in range(n)] + [-2]]
        te = classify_diagram(n + 1, lambda i, j: ext[i][j])
        if te is None or not te.affine:
            continue
        marks = affine_marks(Matrix(ext))
        rest = [Fraction(f) for f in F]
        for m, c in zip(marks, classes):
            rest = [r - m * x for r, x in zip(rest, c)]
        h = [r / marks[-1] for r in rest]
        if any(x.denominator != 1 for x in h):
            continue
        h = tuple(int(x) for x in h)
        if h in known or pair(h, h) != -2 or pair(h, F) != 0:
            continue
        if any(pair(h, c) != pat.get(i, 0) for i, c in enumerate(classes)):
            continue
        if any(pair(h, r.cls) < 0 for r in records):
            continue
        sols.add(h)
    if len(sols) != 1:
        raise ConsistencyError(f"{len(sols)} consistent completions of a {t.name} configuration")
    return sols.pop()


def induce_fibration(config: AdeConfig, graph, model, zero_label: str | None = None,
                     name: str | None = None, chi: int = 2) -> FibrationData:
    """The elliptic pencil |F| spanned by an extended Dynkin configuration.

    The zero section is ``zero_label`` or else the first known curve with
    C.F = 1 in graph order.
    """
    if not config.square_zero:
        raise InputError(f"configuration {config.diagram} does not have F^2 = 0")
    F = config.fiber_class
    records = list(graph.vertices)
    if zero_label is None:
        cand = [r.label for r in records if model.pair(r.cls, F) == 1]
        if not cand:
            raise InputError("pencil without known section")
        zero_label = cand[0]
    return fibration_from_curves(model, records, F, zero_label, name or config.diagram, chi,
                                 positions=False)


def induced_section(M: Sequence, f: FibrationData, label: str | None = None) -> SectionClass:
    """Section induced by a multisection (or section) M."""
    return reduce_to_section(M, f, label)
