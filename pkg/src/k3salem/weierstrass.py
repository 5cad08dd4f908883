"""Weierstrass models y^2 = x^3 + a(t) x and their polynomial sections.

Coefficients live in F_{p^2} = F_p[i] (i^2 = -1, a field for p = 3 mod 4)
or, for characteristic-zero checks, in Q[z]/(z^4 + 1) where z plays the
role of a primitive eighth root of unity.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ConsistencyError, InputError, PreconditionError
from .exact import Polynomial
from .ns_model import is_prime


@dataclass(frozen=True)
class QuadExtElement:
    """a + b i in F_p[i]."""

    a: int
    b: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)

    def lift(self, c: int) -> QuadExtElement:
        return QuadExtElement(c, 0, self.p)

    def _coerce(self, o):
        return self.lift(o) if isinstance(o, int) else o

    def __add__(self, o):
        o = self._coerce(o)
        return QuadExtElement(self.a + o.a, self.b + o.b, self.p)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtElement(-self.a, -self.b, self.p)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        o = self._coerce(o)
        return QuadExtElement(self.a * o.a - self.b * o.b, self.a * o.b + self.b * o.a, self.p)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.lift(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def norm(self) -> int:
        return (self.a * self.a + self.b * self.b) % self.p

    def inverse(self) -> QuadExtElement:
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("zero has no inverse")
        inv = pow(nrm, -1, self.p)
        return QuadExtElement(self.a * inv, -self.b * inv, self.p)

    def __truediv__(self, o):
        return self * self._coerce(o).inverse()

    def __repr__(self) -> str:
        return f"{self.a}+{self.b}i"


@dataclass(frozen=True)
class Cyclo8Element:
    """c0 + c1 z + c2 z^2 + c3 z^3 in Q[z]/(z^4 + 1)."""

    c: tuple[Fraction, Fraction, Fraction, Fraction]

    @classmethod
    def z(cls) -> Cyclo8Element:
        return cls((Fraction(0), Fraction(1), Fraction(0), Fraction(0)))

    def lift(self, k) -> Cyclo8Element:
        return Cyclo8Element((Fraction(k), Fraction(0), Fraction(0), Fraction(0)))

    def _coerce(self, o):
        return self.lift(o) if isinstance(o, (int, Fraction)) else o

    def __add__(self, o):
        o = self._coerce(o)
        return Cyclo8Element(tuple(x + y for x, y in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo8Element(tuple(-x for x in self.c))

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        o = self._coerce(o)
        out = [Fraction(0)] * 4
        for i, x in enumerate(self.c):
            for j, y in enumerate(o.c):
                k = i + j
                if k >= 4:  # z^4 = -1
                    out[k - 4] -= x * y
                else:
                    out[k] += x * y
        return Cyclo8Element(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.lift(1)
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not any(self.c)


class RingPoly:
    """Dense polynomial in t over one of the coefficient rings above."""

    __slots__ = ("coeffs", "one")

    def __init__(self, coeffs: Sequence, one):
        cs = [one.lift(c) if isinstance(c, (int, Fraction)) else c for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)
        self.one = one

    @classmethod
    def from_int_poly(cls, p: Polynomial, one) -> RingPoly:
        return cls(list(p.coeffs), one)

    @classmethod
    def t(cls, one) -> RingPoly:
        return cls([0, 1], one)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _coerce(self, o) -> RingPoly:
        if isinstance(o, RingPoly):
            return o
        return RingPoly([o], self.one)

    def __add__(self, o):
        o = self._coerce(o)
        n = max(len(self.coeffs), len(o.coeffs))
        zero = self.one.lift(0)
        a = list(self.coeffs) + [zero] * (n - len(self.coeffs))
        b = list(o.coeffs) + [zero] * (n - len(o.coeffs))
        return RingPoly([x + y for x, y in zip(a, b)], self.one)

    __radd__ = __add__

    def __neg__(self):
        return RingPoly([-c for c in self.coeffs], self.one)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __mul__(self, o):
        o = self._coerce(o)
        if self.is_zero() or o.is_zero():
            return RingPoly([], self.one)
        out = [self.one.lift(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(o.coeffs):
                out[i + j] = out[i + j] + x * y
        return RingPoly(out, self.one)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = RingPoly([1], self.one)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o) -> bool:
        return isinstance(o, RingPoly) and (self - o).is_zero()

    def __hash__(self):
        return hash(len(self.coeffs))

    def substitute_power(self, k: int) -> RingPoly:
        """f(t^k)."""
        zero = self.one.lift(0)
        out = [zero] * (k * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[k * i] = c
        return RingPoly(out, self.one)

    def divmod_monic(self, d: RingPoly) -> tuple[RingPoly, RingPoly]:
        """Division by a monic divisor (all divisors used here are monic)."""
        if d.is_zero() or d.coeffs[-1] != d.one.lift(1):
            raise InputError("divisor must be monic")
        rem = list(self.coeffs)
        q = [self.one.lift(0)] * max(len(rem) - d.degree, 1)
        for i in range(len(rem) - 1, d.degree - 1, -1):
            c = rem[i]
            if c.is_zero():
                continue
            q[i - d.degree] = c
            for j, dc in enumerate(d.coeffs):
                rem[i - d.degree + j] = rem[i - d.degree + j] - c * dc
        return RingPoly(q, self.one), RingPoly(rem, self.one)

    def __repr__(self) -> str:
        return " + ".join(f"({c!r})t^{i}" for i, c in enumerate(self.coeffs) if not c.is_zero()) or "0"


# ---------------------------------------------------------------------------


def _prime_factors(m: int) -> list[int]:
    out, f = [], 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


def find_eighth_root(p: int) -> QuadExtElement:
    """zeta in F_{p^2} with zeta^4 = -1, as g^((p^2-1)/8) for a generator g."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if p % 4 != 3:
        raise PreconditionError(f"p = {p} is not 3 mod 4, so F_p[i] is not a field")
    order = p * p - 1
    qs = _prime_factors(order)
    for a in range(p):
        for b in range(p):
            g = QuadExtElement(a, b, p)
            if g.is_zero():
                continue
            if all(not ((g ** (order // q)) - 1).is_zero() for q in qs):
                zeta = g ** (order // 8)
                if not (zeta ** 4 + 1).is_zero():
                    raise ConsistencyError("generator power is not a primitive eighth root")
                return zeta
    raise ConsistencyError(f"no generator of F_{p}^2 found")


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 = x^3 + a(t) x over a field of the given characteristic (0 for Q-forms)."""

    a: RingPoly | Polynomial
    characteristic: int = 0

    def __post_init__(self):
        if self.a.is_zero():
            raise InputError("a(t) must be nonzero")
        if self.characteristic in (2, 3):
            raise PreconditionError("characteristic 2 and 3 are excluded")


@dataclass(frozen=True)
class RationalSection:
    """A section with polynomial coordinates; ``x is None`` encodes the zero section."""

    x: RingPoly | None
    y: RingPoly | None

    @classmethod
    def zero(cls) -> RationalSection:
        return cls(None, None)

    @property
    def is_zero(self) -> bool:
        return self.x is None


def verify_section(m: WeierstrassModel, s: RationalSection) -> bool:
    """y^2 - x^3 - a x vanishes identically."""
    if s.is_zero:
        return True
    a = m.a if isinstance(m.a, RingPoly) else RingPoly.from_int_poly(m.a, s.x.one)
    return (s.y * s.y - s.x * s.x * s.x - a * s.x).is_zero()


@dataclass(frozen=True)
class DiscriminantData:
    j: int
    c4: Polynomial
    delta: Polynomial


def j_and_discriminant(a: Polynomial) -> DiscriminantData:
    """c4 = -48 a, Delta = -64 a^3, and j = c4^3 / Delta = 1728 identically."""
    if a.is_zero():
        raise InputError("a(t) must be nonzero")
    c4, delta = a * (-48), a ** 3 * (-64)
    if c4 ** 3 != delta * 1728:
        raise ConsistencyError("j-invariant is not 1728")
    return DiscriminantData(1728, c4, delta)


# the two surfaces
X_A = Polynomial((0, 0, 0, 1)) * Polynomial((-1, 1)) ** 2
Y_A = Polynomial((0, 1)) * Polynomial((-1, 1)) ** 2


def x_model(p: int) -> WeierstrassModel:
    one = QuadExtElement(1, 0, p)
    return WeierstrassModel(RingPoly.from_int_poly(X_A, one), p)


def y_model(one) -> WeierstrassModel:
    """Y over the ring of ``one`` (characteristic read off the element type)."""
    char = one.p if isinstance(one, QuadExtElement) else 0
    return WeierstrassModel(RingPoly.from_int_poly(Y_A, one), char)


def _t_tm1(one, i: int, j: int) -> RingPoly:
    t = RingPoly.t(one)
    return t ** i * (t - 1) ** j


def x_sections(p: int) -> dict[str, RationalSection]:
    """P and R on X mod p, p = 4n + 3."""
    n = (p - 3) // 4
    z = find_eighth_root(p)
    one = z.lift(1)
    xs = _t_tm1(one, 2 * n + 3, 1)
    ys = _t_tm1(one, n + 3, 2 * n + 3)
    return {
        "P": RationalSection(xs * z ** 2, ys * z ** 3),
        "R": RationalSection(xs * (-(z ** 2)), ys * (-z)),
    }


def y_sections(zeta) -> dict[str, RationalSection]:
    """P' and R' on Y, with ``zeta`` any element satisfying zeta^4 = -1."""
    one = zeta.lift(1)
    xs, ys = _t_tm1(one, 1, 1), _t_tm1(one, 1, 2)
    return {
        "P'": RationalSection(xs * zeta ** 2, ys * zeta ** 3),
        "R'": RationalSection(xs * (-(zeta ** 2)), ys * (-zeta)),
    }


def inseparable_pullback(s: RationalSection, p: int) -> RationalSection:
    """Pull a section of Y back to X along t -> t^p followed by the coordinate scaling.

    x_X = x_Y(t^p) / (t^{2n} (t - 1)^{4n+2}), y_X = y_Y(t^p) / (t^{3n} (t - 1)^{6n+3}).
    """
    if s.is_zero:
        return s
    if p % 4 != 3:
        raise PreconditionError(f"p = {p} is not 3 mod 4")
    n = (p - 3) // 4
    one = s.x.one
    out = []
    for coord, (i, j) in ((s.x, (2 * n, 4 * n + 2)), (s.y, (3 * n, 6 * n + 3))):
        q, r = coord.substitute_power(p).divmod_monic(_t_tm1(one, i, j))
        if not r.is_zero():
            raise ConsistencyError("pullback coordinate is not a polynomial")
        out.append(q)
    res = RationalSection(out[0], out[1])
    if not verify_section(x_model(p), res):
        raise ConsistencyError("pulled-back section does not lie on X")
    return res


def section_checks(p: int) -> dict[str, bool]:
    """Payload of ``verify sections``."""
    z = find_eighth_root(p)
    X = x_model(p)
    xs, ys = x_sections(p), y_sections(z)
    Y = y_model(z.lift(1))
    out = {k: verify_section(X, s) for k, s in xs.items()}
    out.update({k: verify_section(Y, s) for k, s in ys.items()})
    try:
        out["pullbackConsistent"] = all(
            inseparable_pullback(ys[k + "'"], p) == xs[k] for k in ("P", "R"))
    except ConsistencyError:
        out["pullbackConsistent"] = False
    return out
