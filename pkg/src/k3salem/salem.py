"""Composite automorphisms, their characteristic polynomials and Salem certificates."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Sequence

import mpmath

from .errors import InputError, PreconditionError, UnclassifiedFactorError
from .exact import (
    Matrix, Polynomial, cauchy_bound, char_poly_exact, cyclotomic_poly, euler_phi,
    isolate_root, poly_divrem, sturm_count,
)
from .fibration import as_section, fibration_by_name, translation_pushforward
from .isometry import Isometry
from .ns_model import NSModel

DEFAULT_WORD = ("R", "P", "P'", "P''")
FIBRATION_BY_PRIMES = {0: "pi", 1: "pi'", 2: "pi''"}
_TOKEN = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(['′″]*)$")

PROOF_ROUTE = (
    "reciprocal characteristic polynomial of an isometry of a hyperbolic lattice factors into "
    "cyclotomic polynomials and at most one Salem polynomial; after exclusion of every "
    "cyclotomic factor the remainder is that Salem polynomial"
)


def parse_token(token: str) -> tuple[str, str]:
    """'P''' -> ('P', "pi''"): the prime marks select the fibration."""
    m = _TOKEN.match(token.strip())
    if not m:
        raise InputError(f"cannot parse word entry {token!r}")
    label, marks = m.groups()
    primes = sum(2 if c == "″" else 1 for c in marks)
    if primes not in FIBRATION_BY_PRIMES:
        raise InputError(f"no fibration with {primes} prime marks ({token!r})")
    return label, FIBRATION_BY_PRIMES[primes]


@lru_cache(maxsize=256)
def translation_for(model: NSModel, fibration: str, label: str) -> Isometry:
    """(+S)_* for the section called ``label`` on the named fibration."""
    f = fibration_by_name(model, fibration)
    try:
        cls = f.section(label)
    except KeyError:
        raise InputError(f"{label!r} is not a known section of {fibration}") from None
    return translation_pushforward(as_section(cls, f, label), f)


def compose_word(word: Sequence[str], model: NSModel) -> Isometry:
    """f* for f = w_1 o w_2 o ... o w_k, each w_i a translation.

    f_* is the left-to-right product of the push-forwards, and f* its inverse,
    i.e. the right-to-left product of the individual pullbacks.
    """
    push = Isometry.identity(model.gram)
    for token in word:
        label, fib = parse_token(token)
        push = push @ translation_for(model, fib, label)
    return push.inverse()


def symmetrize_reciprocal(mu: Polynomial) -> Polynomial:
    """The g with mu = x^d g(x + 1/x), deg mu = 2d."""
    if mu.is_zero() or mu.degree % 2 or not mu.is_reciprocal():
        raise InputError("expected a nonzero reciprocal polynomial of even degree")
    d = mu.degree // 2
    rest = mu
    g = [0] * (d + 1)
    x2p1 = Polynomial((1, 0, 1))
    for k in range(d, -1, -1):
        c = rest[d + k]
        g[k] = c
        if c:
            rest = rest - Polynomial.monomial(d - k, c) * x2p1 ** k
    if not rest.is_zero():
        raise InputError("reciprocal elimination left a remainder")
    return Polynomial(g)


def expand_trace_polynomial(g: Polynomial) -> Polynomial:
    """x^d g(x + 1/x) for d = deg g."""
    d = g.degree
    out = Polynomial(())
    x2p1 = Polynomial((1, 0, 1))
    for k in range(d + 1):
        if g[k]:
            out = out + Polynomial.monomial(d - k, g[k]) * x2p1 ** k
    return out


def strip_cyclotomic_factors(mu: Polynomial) -> tuple[list[int], Polynomial]:
    """Divide out every Phi_k (with multiplicity), for k <= 2 deg^2 and phi(k) <= deg."""
    if mu.is_zero():
        raise InputError("zero polynomial")
    deg = mu.degree
    ks = [k for k in range(1, 2 * deg * deg + 1) if euler_phi(k) <= deg] if deg else []
    found: list[int] = []
    rest = mu
    for k in ks:
        phi = cyclotomic_poly(k)
        while rest.degree >= phi.degree:
            q, r, exact = poly_divrem(rest, phi)
            if not exact:
                break
            found.append(k)
            rest = q
    return found, rest


@dataclass
class SalemVerdict:
    is_salem22: bool
    mu: Polynomial
    cyclotomic_factors: list[int]
    salem_factor: Polynomial
    trace_g: Polynomial | None
    root_profile: tuple[int, int] | None  # (roots of g in (-2, 2], roots of g above 2)
    proof_route: str | None = None
    advisories: list[str] = field(default_factory=list)

    @property
    def salem_degree(self) -> int:
        return self.salem_factor.degree if self.trace_g is not None else 0

    def to_json(self) -> dict:
        return {
            "mu": self.mu.to_json(),
            "g": self.trace_g.to_json() if self.trace_g is not None else None,
            "cyclotomicFactors": [str(k) for k in self.cyclotomic_factors],
            "salemDegree": self.salem_degree,
            "rootProfile": list(self.root_profile) if self.root_profile else None,
            "isSalem22": self.is_salem22,
            "proofRoute": self.proof_route,
            "advisories": self.advisories,
        }


def salem_verdict(m: Isometry | Matrix) -> SalemVerdict:
    """Characteristic polynomial, cyclotomic exclusion and Sturm root profile."""
    mat = m.matrix if isinstance(m, Isometry) else m
    mu = char_poly_exact(mat)
    factors, rest = strip_cyclotomic_factors(mu)
    if rest.degree == 0:
        return SalemVerdict(False, mu, factors, rest, None, None)
    if rest.degree % 2 or not rest.is_reciprocal():
        raise UnclassifiedFactorError(f"non-cyclotomic remainder of degree {rest.degree} is not reciprocal")
    g = symmetrize_reciprocal(rest)
    above = sturm_count(g, 2, max(cauchy_bound(g), Fraction(3)))
    inside = sturm_count(g, -2, 2)
    if above != 1 or inside != g.degree - 1:
        raise UnclassifiedFactorError(
            f"remainder of degree {rest.degree} has root profile (inside={inside}, above={above})")
    advisories = []
    if rest.degree < 4:
        advisories.append("quadratic Salem factor: admitted by the definition without unit-circle roots")
    return SalemVerdict(rest.degree == 22, mu, factors, rest, g, (inside, above), PROOF_ROUTE, advisories)


# ---------------------------------------------------------------------------
# certified intervals


@dataclass(frozen=True)
class CertifiedInterval:
    lo: Fraction
    hi: Fraction

    def __contains__(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def decimal(self, digits: int = 15) -> list[str]:
        """Endpoints as decimal strings, rounded outward."""
        return [_to_decimal(self.lo, digits, up=False), _to_decimal(self.hi, digits, up=True)]


def _to_decimal(x: Fraction, digits: int, up: bool) -> str:
    scale = 10 ** digits
    num = x.numerator * scale
    q = -((-num) // x.denominator) if up else num // x.denominator
    sign = "-" if q < 0 else ""
    q = abs(q)
    return f"{sign}{q // scale}.{q % scale:0{digits}d}"


def _sqrt_bounds(q: Fraction, bits: int = 160) -> tuple[Fraction, Fraction]:
    scale = 1 << bits
    s = isqrt(q.numerator * q.denominator * scale * scale)
    den = q.denominator * scale
    return Fraction(s, den), Fraction(s + 1, den)


def _mpf_to_fraction(v) -> Fraction:
    man, exp = mpmath.mpf(v).man_exp
    return Fraction(man) * Fraction(2) ** exp


def salem_number_and_entropy(v: SalemVerdict | Polynomial, width=Fraction(1, 10 ** 12)
                             ) -> tuple[CertifiedInterval, CertifiedInterval]:
    """Intervals for the Salem number a and for log a.

    The unique root lam > 2 of g is isolated by exact bisection; then
    a = (lam + sqrt(lam^2 - 4)) / 2, which is increasing in lam.
    """
    g = v if isinstance(v, Polynomial) else v.trace_g
    if g is None:
        raise PreconditionError("zero-entropy verdict: no Salem factor")
    hi0 = max(cauchy_bound(g), Fraction(3))
    if sturm_count(g, 2, hi0) != 1:
        raise PreconditionError("g does not have a single root above 2")
    lo, hi = isolate_root(g, 2, hi0, Fraction(width) / 4)
    a_lo = (lo + _sqrt_bounds(lo * lo - 4)[0]) / 2
    a_hi = (hi + _sqrt_bounds(hi * hi - 4)[1]) / 2
    iv = mpmath.iv
    saved, iv.prec = iv.prec, 200
    try:
        low = iv.log(iv.mpf(a_lo.numerator) / a_lo.denominator)
        high = iv.log(iv.mpf(a_hi.numerator) / a_hi.denominator)
        h_lo, h_hi = _mpf_to_fraction(low.a), _mpf_to_fraction(high.b)
    finally:
        iv.prec = saved
    return CertifiedInterval(a_lo, a_hi), CertifiedInterval(h_lo, h_hi)
