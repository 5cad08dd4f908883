"""Kodaira fibers: classification from vanishing orders and fiber combinatorics.

Components of a :class:`KodairaFiber` are stored in a canonical order that the
translation and local-contribution tables rely on:

* ``I_n``, ``III``: cycle order starting at the zero component
* ``I0*``: center, then the four legs with the zero leg first
* ``IV*``: center, then (inner, outer) per arm, zero arm first
* ``III*``: the 7-chain starting at the zero end, then the branch node
* ``II*``: the 8-chain starting at the zero end, then the branch node
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Sequence

from ..errors import InputError, PreconditionError, UnsupportedFiberError
from ..exact import Matrix, Polynomial, kernel, poly_divrem, poly_gcd

# (ord c4, ord Delta) -> type, for y^2 = x^3 + a(t) x where ord c4 = ord a
_J1728_TABLE = {(0, 0): None, (1, 3): "III", (2, 6): "I0*", (3, 9): "III*"}

EULER = {"III": 3, "IV": 4, "I0*": 6, "IV*": 8, "III*": 9, "II*": 10, "II": 2}


@dataclass(frozen=True)
class FiberPlace:
    position: str
    kind: str
    ord_c4: int
    ord_delta: int


def _rational_roots(a: Polynomial) -> list[Fraction]:
    p = a.primitive()
    k = 0
    while p[k] == 0:
        k += 1
    roots = [Fraction(0)] if k else []
    p = Polynomial(p.coeffs[k:])
    if p.degree < 1:
        return roots

    def divisors(m):
        m = abs(m)
        return [d for d in range(1, m + 1) if m % d == 0]

    for num in divisors(p[0]):
        for den in divisors(p.leading):
            for r in (Fraction(num, den), Fraction(-num, den)):
                if r not in roots and p(r) == 0:
                    roots.append(r)
    return sorted(roots)


def _order_at(a: Polynomial, r: Fraction) -> int:
    lin = Polynomial((-r, 1))
    k = 0
    while not a.is_zero():
        q, rem, _ = poly_divrem(a, lin)
        if not rem.is_zero():
            break
        a, k = q, k + 1
    return k


def _yun(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Squarefree decomposition f = c * prod a_i^i over Q."""
    if f.degree < 1:
        return []
    a = poly_gcd(f, f.derivative())
    c = poly_divrem(f, a).quotient
    d = poly_divrem(f.derivative(), a).quotient - c.derivative()
    out, i = [], 1
    while c.degree > 0:
        ai = poly_gcd(c, d)
        if ai.degree > 0:
            out.append((ai, i))
        c = poly_divrem(c, ai).quotient
        d = poly_divrem(d, ai).quotient - c.derivative()
        i += 1
    return out


def _fmt(r: Fraction) -> str:
    return f"t={r}"


def classify_kodaira(a: Polynomial, characteristic: int = 0) -> list[FiberPlace]:
    """Singular fibers of y^2 = x^3 + a(t) x over P^1.

    Here c4 = -48 a and Delta = -64 a^3. The place at infinity is read off the
    homogenization of a as a section of O(4 chi), chi = ceil(deg a / 4).
    Only places with rational coordinate are resolved; an irrational factor
    of a is reported as one place per factor root set.
    """
    if characteristic in (2, 3):
        raise PreconditionError("Kodaira classification from j and Delta fails in characteristic 2 and 3")
    if a.is_zero():
        raise InputError("a(t) must be nonzero")
    chi = -(-a.degree // 4)
    places: list[tuple[str, int]] = []
    rest = a
    for r in _rational_roots(a):
        k = _order_at(a, r)
        places.append((_fmt(r), k))
        rest = poly_divrem(rest, Polynomial((-r, 1)) ** k).quotient
    # irrational roots, grouped by multiplicity
    for factor, k in _yun(rest):
        places.append((f"roots of {factor.primitive()!r}", k))
    places.append(("t=inf", 4 * chi - a.degree))
    out = []
    for pos, k in places:
        key = (k, 3 * k)
        if key not in _J1728_TABLE:
            raise UnsupportedFiberError(f"vanishing orders (ord c4, ord Delta) = {key} at {pos}")
        kind = _J1728_TABLE[key]
        if kind is not None:
            out.append(FiberPlace(pos, kind, k, 3 * k))
    return out


# ---------------------------------------------------------------------------
# fiber combinatorics


@dataclass(frozen=True)
class KodairaFiber:
    kind: str
    components: tuple[str, ...]
    classes: tuple[tuple, ...]
    multiplicities: tuple[int, ...]
    zero_index: int
    position: str | None = None
    hidden: tuple[str, ...] = ()

    @property
    def simple_indices(self) -> tuple[int, ...]:
        return tuple(i for i, m in enumerate(self.multiplicities) if m == 1)

    @property
    def euler(self) -> int:
        if self.kind in EULER:
            return EULER[self.kind]
        if self.kind.endswith("*"):
            return int(self.kind[1:-1]) + 6
        return int(self.kind[1:])

    @property
    def root_type(self) -> tuple[str, int]:
        k = self.kind
        if k == "III":
            return ("A", 1)
        if k == "IV":
            return ("A", 2)
        if k in ("IV*", "III*", "II*"):
            return ("E", {"IV*": 6, "III*": 7, "II*": 8}[k])
        if k.endswith("*"):
            return ("D", int(k[1:-1]) + 4)
        return ("A", int(k[1:]) - 1)

    @property
    def component_group(self) -> str:
        k = self.kind
        if k == "I0*":
            return "(Z/2)^2"
        if k.endswith("*") and k.startswith("I"):
            return "Z/4" if int(k[1:-1]) % 2 else "(Z/2)^2"
        if k in ("IV*", "IV"):
            return "Z/3"
        if k in ("III*", "III"):
            return "Z/2"
        if k == "II*":
            return "0"
        return f"Z/{int(k[1:])}"

    def index_of(self, label: str) -> int:
        return self.components.index(label)


def _is_cyclic(kind: str) -> bool:
    return kind == "III" or (kind.startswith("I") and not kind.endswith("*") and kind[1:].isdigit())


def local_contribution(fiber: KodairaFiber, i: int, j: int) -> Fraction:
    """Correction term of the height pairing for sections meeting simple components i, j."""
    simple = fiber.simple_indices
    if i not in simple or j not in simple:
        raise InputError(f"components {i}, {j} are not simple components of {fiber.kind}")
    z = fiber.zero_index
    if i == z or j == z:
        return Fraction(0)
    k = fiber.kind
    if _is_cyclic(k):
        n = len(fiber.components)
        a, b = sorted((i, j))  # cycle positions, zero at 0
        return Fraction(a * (n - b), n)
    if k == "I0*":
        return Fraction(1) if i == j else Fraction(1, 2)
    if k == "IV*":
        return Fraction(4, 3) if i == j else Fraction(2, 3)
    if k == "III*":
        return Fraction(3, 2)
    raise UnsupportedFiberError(f"no local contribution table for {k}")


def translation_permutation(fiber: KodairaFiber, s: int) -> list[int]:
    """Image index of each component under translation by a section meeting component s."""
    m = len(fiber.components)
    z = fiber.zero_index
    if s not in fiber.simple_indices:
        raise InputError(f"component {s} is not simple")
    if s == z:
        return list(range(m))
    k = fiber.kind
    if _is_cyclic(k):
        return [(i + s) % m for i in range(m)]
    if k == "III*":
        return [6 - i for i in range(7)] + [7]
    if k == "I0*":
        a, b = (leg for leg in (1, 2, 3, 4) if leg not in (z, s))
        perm = list(range(5))
        perm[z], perm[s], perm[a], perm[b] = s, z, b, a
        return perm
    if k == "IV*":
        shift = (s - 2) // 2  # outer nodes sit at 2, 4, 6
        perm = [0] * 7
        for arm in range(3):
            dst = (arm + shift) % 3
            perm[1 + 2 * arm] = 1 + 2 * dst
            perm[2 + 2 * arm] = 2 + 2 * dst
        return perm
    raise UnsupportedFiberError(f"no translation table for {k}")


# ---------------------------------------------------------------------------
# recognizing Dynkin and extended Dynkin diagrams


@dataclass(frozen=True)
class DiagramType:
    family: str  # "A", "D", "E"
    rank: int
    affine: bool

    @property
    def name(self) -> str:
        return f"{self.family}~{self.rank}" if self.affine else f"{self.family}{self.rank}"


def classify_diagram(n: int, weight: Callable[[int, int], int]) -> DiagramType | None:
    """Type of the connected (-2)-curve configuration on vertices 0..n-1, or None."""
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if weight(i, j)]
    if any(weight(i, j) > 2 for i, j in edges):
        return None
    if any(weight(i, j) == 2 for i, j in edges):
        return DiagramType("A", 1, True) if n == 2 else None
    deg = [0] * n
    adj = [[] for _ in range(n)]
    for i, j in edges:
        deg[i] += 1
        deg[j] += 1
        adj[i].append(j)
        adj[j].append(i)
    # connectivity
    seen, stack = {0}, [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        return None
    if len(edges) == n:
        return DiagramType("A", n - 1, True) if all(d == 2 for d in deg) and n >= 3 else None
    if len(edges) != n - 1:
        return None
    if max(deg, default=0) <= 2:
        return DiagramType("A", n, False)
    branch = [v for v in range(n) if deg[v] >= 3]
    if any(deg[v] > 4 for v in branch):
        return None
    if len(branch) == 1 and deg[branch[0]] == 4:
        return DiagramType("D", 4, True) if n == 5 else None
    if len(branch) == 1:
        arms = sorted(_arm_lengths(branch[0], adj))
        if arms[0] == 1 and arms[1] == 1:
            return DiagramType("D", n, False)
        return {
            (1, 2, 2): DiagramType("E", 6, False),
            (1, 2, 3): DiagramType("E", 7, False),
            (1, 2, 4): DiagramType("E", 8, False),
            (2, 2, 2): DiagramType("E", 6, True),
            (1, 3, 3): DiagramType("E", 7, True),
            (1, 2, 5): DiagramType("E", 8, True),
        }.get(tuple(arms))
    if len(branch) == 2 and all(deg[v] == 3 for v in branch):
        leaves_ok = all(sum(1 for w in adj[v] if deg[w] == 1) >= 2 for v in branch)
        return DiagramType("D", n - 1, True) if leaves_ok and n >= 6 else None
    return None


def _arm_lengths(center: int, adj) -> list[int]:
    out = []
    for start in adj[center]:
        prev, cur, length = center, start, 1
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur, length = cur, nxt[0], length + 1
        out.append(length)
    return out


def affine_marks(gram_block: Matrix) -> tuple[int, ...]:
    """Primitive positive generator of the radical of an affine diagram's Gram matrix."""
    ker = kernel(gram_block)
    if len(ker) != 1:
        raise InputError("not an extended Dynkin configuration")
    v = ker[0]
    den = lcm(*(Fraction(x).denominator for x in v))
    ints = [int(x * den) for x in v]
    g = gcd(*ints)
    ints = [x // g for x in ints]
    if ints[0] < 0:
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise InputError("radical vector is not positive")
    return tuple(ints)


_KIND_BY_TYPE = {("D", 4): "I0*", ("E", 6): "IV*", ("E", 7): "III*", ("E", 8): "II*"}


def kodaira_kind(t: DiagramType) -> str:
    """Kodaira symbol of a fiber with this extended Dynkin diagram (I_n for cycles)."""
    if t.family == "A":
        return f"I{t.rank + 1}"
    if t.family == "D" and t.rank > 4:
        return f"I{t.rank - 4}*"
    return _KIND_BY_TYPE[(t.family, t.rank)]


def build_fiber(labels: Sequence[str], classes: Sequence[tuple], pair, zero_section: tuple,
                kind: str | None = None, position: str | None = None,
                hidden: Sequence[str] = ()) -> KodairaFiber:
    """Canonically ordered fiber from an unordered set of component classes."""
    n = len(labels)
    w = [[pair(classes[i], classes[j]) for j in range(n)] for i in range(n)]
    t = classify_diagram(n, lambda i, j: w[i][j])
    if t is None or not t.affine:
        raise InputError(f"components {list(labels)} do not form an extended Dynkin diagram")
    marks = affine_marks(Matrix(w))
    hits = [i for i in range(n) if pair(zero_section, classes[i]) != 0]
    if len(hits) != 1 or pair(zero_section, classes[hits[0]]) != 1 or marks[hits[0]] != 1:
        raise InputError("zero section does not meet exactly one simple component once")
    z = hits[0]
    lattice_kind = kodaira_kind(t)
    if kind is None:
        kind = lattice_kind
    elif not ({kind, lattice_kind} <= {"III", "I2"} or {kind, lattice_kind} <= {"IV", "I3"}
              or kind == lattice_kind):
        raise InputError(f"declared type {kind} but the diagram is {t.name}")
    adj = [[j for j in range(n) if j != i and w[i][j]] for i in range(n)]
    order = _canonical_order(t, z, adj, marks)
    return KodairaFiber(
        kind=kind,
        components=tuple(labels[i] for i in order),
        classes=tuple(classes[i] for i in order),
        multiplicities=tuple(marks[i] for i in order),
        zero_index=0 if t.family == "A" else order.index(z),
        position=position,
        hidden=tuple(hidden),
    )


def _path_from(start: int, prev: int, adj) -> list[int]:
    path = [start]
    while True:
        nxt = [v for v in adj[path[-1]] if v != prev]
        if len(nxt) != 1:
            return path
        prev = path[-1]
        path.append(nxt[0])


def _canonical_order(t: DiagramType, z: int, adj, marks) -> list[int]:
    n = len(adj)
    if t.family == "A":
        if n == 2:
            return [z, 1 - z]
        order, prev = [z], None
        cur = z
        nxt = min(adj[z])
        while nxt != z:
            order.append(nxt)
            prev, cur = cur, nxt
            nxt = next(v for v in adj[cur] if v != prev)
        return order
    center = max(range(n), key=lambda v: (len(adj[v]), marks[v]))
    arms = [_path_from(s, center, adj) for s in sorted(adj[center])]
    if t.family == "D" and t.rank == 4:
        legs = [a[0] for a in arms]
        legs.sort(key=lambda v: v != z)
        return [center] + legs
    if t.family == "E" and t.rank == 6:
        arms.sort(key=lambda a: a[-1] != z)
        return [center] + [v for a in arms for v in a]
    if t.family == "E":
        zero_arm = next(a for a in arms if a[-1] == z)
        short = min(arms, key=len)
        others = [a for a in arms if a is not zero_arm and a is not short]
        chain = list(reversed(zero_arm)) + [center] + [v for a in others for v in a]
        return chain + short
    raise UnsupportedFiberError(f"no canonical order for {t.name}")
