"""Dense univariate polynomials with exact integer/rational coefficients.

``coeffs[i]`` is the coefficient of ``x**i``. The zero polynomial has no
coefficients and degree -1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import NamedTuple, Sequence

from ..errors import InputError


def _norm(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else x
    raise TypeError(f"inexact coefficient {x!r}")


@dataclass(frozen=True, init=False)
class Polynomial:
    coeffs: tuple

    def __init__(self, coeffs: Sequence = ()):
        cs = [_norm(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls) -> Polynomial:
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c=1) -> Polynomial:
        return cls((0,) * k + (c,))

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def is_monic(self) -> bool:
        return self.leading == 1

    def is_reciprocal(self) -> bool:
        """Palindromic coefficients (the zero polynomial counts)."""
        return self.coeffs == self.coeffs[::-1]

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result, base = Polynomial((1,)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self) -> Polynomial:
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, inner: Polynomial) -> Polynomial:
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def monic(self) -> Polynomial:
        lc = self.leading
        return Polynomial([Fraction(c) / lc for c in self.coeffs])

    def primitive(self) -> Polynomial:
        """Integer polynomial with coprime coefficients and positive lead."""
        if self.is_zero():
            return self
        from math import gcd, lcm
        den = lcm(*(Fraction(c).denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = gcd(*ints)
        if ints[-1] < 0:
            g = -g
        return Polynomial([c // g for c in ints])

    def __repr__(self) -> str:
        if self.is_zero():
            return "Polynomial(0)"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c:
                terms.append(f"{c}" + ("" if i == 0 else "*x" if i == 1 else f"*x^{i}"))
        return "Polynomial(" + " + ".join(terms) + ")"

    def to_json(self) -> dict:
        return {"coeffs": [str(c) if isinstance(c, int) else f"{c.numerator}/{c.denominator}"
                           for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> Polynomial:
        return cls([Fraction(c) for c in data["coeffs"]])


def _coerce(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Polynomial((x,))
    return None


class DivResult(NamedTuple):
    quotient: Polynomial
    remainder: Polynomial
    exact: bool


def poly_divrem(a: Polynomial, b: Polynomial) -> DivResult:
    """Euclidean division over Q; ``exact`` iff the remainder vanishes and q is integral."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    rem = [Fraction(c) for c in a.coeffs]
    db, lb = b.degree, b.leading
    q = [Fraction(0)] * max(len(rem) - db, 0)
    for k in range(len(rem) - db - 1, -1, -1):
        c = rem[k + db] / lb
        q[k] = c
        if c:
            for i, bc in enumerate(b.coeffs):
                rem[k + i] -= c * bc
    quotient, remainder = Polynomial(q), Polynomial(rem[:db])
    return DivResult(quotient, remainder, remainder.is_zero() and quotient.is_integral())


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over Q."""
    while not b.is_zero():
        a, b = b, poly_divrem(a, b).remainder
    return a.monic() if not a.is_zero() else a


def squarefree_part(p: Polynomial) -> Polynomial:
    g = poly_gcd(p, p.derivative())
    return poly_divrem(p, g).quotient if g.degree > 0 else p


@lru_cache(maxsize=None)
def cyclotomic_poly(k: int) -> Polynomial:
    """Phi_k from x^k - 1 = prod_{d | k} Phi_d, dividing out the proper divisors."""
    if k < 1:
        raise InputError("cyclotomic index must be positive")
    acc = Polynomial.monomial(k) - 1
    for d in range(1, k):
        if k % d == 0:
            q, r, _ = poly_divrem(acc, cyclotomic_poly(d))
            assert r.is_zero()
            acc = q
    return acc


def euler_phi(k: int) -> int:
    result, m, f = k, k, 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            result -= result // f
        f += 1
    if m > 1:
        result -= result // m
    return result


def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-poly_divrem(seq[-2], seq[-1]).remainder)
    return seq[:-1]


def _sign_changes(seq: list[Polynomial], t) -> int:
    signs = [v for v in (s(t) for s in seq) if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))


def sturm_count(p: Polynomial, a, b) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (a, b]."""
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        raise InputError(f"empty interval ({a}, {b}]")
    if p.is_zero():
        raise InputError("the zero polynomial has no isolated roots")
    seq = sturm_sequence(squarefree_part(p))
    return _sign_changes(seq, a) - _sign_changes(seq, b)


def cauchy_bound(p: Polynomial) -> Fraction:
    """All complex roots satisfy |z| < 1 + max|c_i| / |lead|."""
    lc = abs(p.leading)
    return 1 + max((Fraction(abs(c)) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_root(p: Polynomial, lo, hi, width) -> tuple[Fraction, Fraction]:
    """Shrink (lo, hi], known to hold exactly one root of ``p``, to width <= ``width``."""
    lo, hi, width = Fraction(lo), Fraction(hi), Fraction(width)
    q = squarefree_part(p)
    if sturm_count(q, lo, hi) != 1:
        raise InputError("interval does not isolate a single root")
    if q(hi) == 0:
        return hi, hi
    s_hi = q(hi) > 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = q(mid)
        if v == 0:
            return mid, mid
        if (v > 0) == s_hi:
            hi = mid
        else:
            lo = mid
    return lo, hi
