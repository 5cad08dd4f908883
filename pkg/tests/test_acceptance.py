"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line; the lines are printed together at the
end of the pytest run (see ``pytest_terminal_summary`` in conftest.py), and
also when this file is run directly with ``python tests/test_acceptance.py``.
"""
import random
from collections import Counter
from fractions import Fraction
from itertools import product

import pytest

from k3salem.exact import Matrix, Polynomial, char_poly_exact, det_exact
from k3salem.fibration import (
    alternative_fibrations, as_section, classify_kodaira, find_ade_configurations,
    height_by_projection, height_pairing, rational_fibration, reduce_to_section,
    standard_fibration, translation_pushforward,
)
from k3salem.fibration.models import X_COEFF, Y_COEFF
from k3salem.lattice import discriminant_group, is_p_elementary, signature
from k3salem.ns_model import BASIS_LABELS, NSModel, build_ns_model, curve_graph, ns_gram
from k3salem.salem import (
    DEFAULT_WORD, compose_word, expand_trace_polynomial, salem_verdict, strip_cyclotomic_factors,
)
from k3salem.weierstrass import (
    Cyclo8Element, find_eighth_root, inseparable_pullback, verify_section, x_model, x_sections,
    y_model, y_sections,
)

from conftest import P_PLUS_R, PRIMES, g_reference, reference_gram

RESULTS: list[tuple[int, str, bool, str]] = []


def criterion(number: int, title: str):
    """Run the decorated check, record PASS/FAIL and re-raise failures."""
    def wrap(fn):
        def test(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException as e:
                RESULTS.append((number, title, False, f"{type(e).__name__}: {e}"[:200]))
                print(f"criterion {number:2d} FAIL  {title}")
                raise
            RESULTS.append((number, title, True, ""))
            print(f"criterion {number:2d} PASS  {title}")
        test.__name__ = fn.__name__
        test.__doc__ = fn.__doc__
        return test
    return wrap


def _sec(f, lab):
    return as_section(f.section(lab), f, lab)


def _model(n: int) -> NSModel:
    # the lattice computations never use primality, so composite 4n+3 is allowed here
    return NSModel(BASIS_LABELS, ns_gram(n), p=4 * n + 3, n=n)


_FSTAR: dict[int, Matrix] = {}


def f_star(n: int) -> Matrix:
    if n not in _FSTAR:
        _FSTAR[n] = compose_word(DEFAULT_WORD, _model(n)).matrix
    return _FSTAR[n]


@criterion(1, "Gram matrix equals the reference 22x22 matrix (n = 0, 1, 2, 4)")
def test_gram_regression():
    for n in (0, 1, 2, 4):
        assert build_ns_model(4 * n + 3).gram.rows == tuple(map(tuple, reference_gram(n)))


@criterion(2, "det = -p^2, discriminant group [p, p], p-elementary, signature (1, 21)")
def test_determinant():
    for p in PRIMES:
        lat = build_ns_model(p).lattice
        assert det_exact(lat.gram) == -p * p
        assert discriminant_group(lat).invariant_factors == (p, p)
        assert is_p_elementary(lat, p)
        assert signature(lat) == (1, 21)


@criterion(3, "heights <P,P> = 2n + 3/2, <P,R> = 0 on X(p); diag(1/2, 1/2) on Y")
def test_heights():
    for p in PRIMES:
        m = build_ns_model(p)
        f = standard_fibration(m)
        P, R = _sec(f, "P"), _sec(f, "R")
        assert height_pairing(P, P, f) == 2 * m.n + Fraction(3, 2)
        assert height_pairing(P, R, f) == 0
    y = rational_fibration()
    P, R = _sec(y, "P'"), _sec(y, "R'")
    assert [height_pairing(a, b, y) for a, b in ((P, P), (R, R), (P, R))] == [
        Fraction(1, 2), Fraction(1, 2), 0]


@criterion(4, "reduce_to_section(P + R - O) equals the reference vector of P+R")
def test_reduction():
    f = standard_fibration(build_ns_model(3))
    P, R, O = (f.section(l) for l in ("P", "R", "O"))
    assert reduce_to_section([a + b - c for a, b, c in zip(P, R, O)], f).cls == P_PLUS_R


@criterion(5, "translations are isometries fixing F; T(Q)^2 = I; group law on {O,Q,P,R}")
def test_isometries():
    for p in PRIMES:
        m = build_ns_model(p)
        G = m.gram
        pi = standard_fibration(m)
        for f in (pi,) + alternative_fibrations(m):
            for lab in (f.zero_label,) + tuple(l for l, _ in f.sections):
                M = translation_pushforward(_sec(f, lab), f).matrix
                assert M.T @ G @ M == G
                assert M.apply(f.fiber_class) == tuple(f.fiber_class)
        by_class = {}

        def push(s):
            if s.cls not in by_class:
                by_class[s.cls] = translation_pushforward(s, pi)
            return by_class[s.cls]

        T = {l: push(_sec(pi, l)) for l in "OQPR"}
        assert (T["Q"] @ T["Q"]).matrix == Matrix.identity(22)
        for a, b in product("OQPR", repeat=2):
            s = reduce_to_section([x + y - o for x, y, o in
                                   zip(pi.section(a), pi.section(b), pi.zero_section)], pi)
            assert (T[a] @ T[b]).matrix == push(s).matrix


@criterion(6, "curve graph contains E~7 (x2), D~4, A~15, A~11 and E~6 configurations")
def test_fibration_detection():
    m = build_ns_model(3)
    configs = find_ade_configurations(curve_graph(m), m)
    F = m.unit("F")
    std = Counter(c.diagram for c in configs if c.fiber_class == F)
    assert std["E~7"] == 2 and std["D~4"] == 1
    kinds = Counter(c.diagram for c in configs)
    assert kinds["A~15"] >= 1 and kinds["A~11"] >= 1 and kinds["E~6"] >= 1
    p1, p2 = alternative_fibrations(m)
    assert [x.kind for x in p1.fibers] == ["I16", "I4"]
    assert [x.kind for x in p2.fibers] == ["I12", "IV*"]


@criterion(7, "char poly of f* = x^11 g(x + 1/x) per prime and as an identity in Z[n][x]")
def test_end_to_end():
    for p in PRIMES:
        n = (p - 3) // 4
        mu = char_poly_exact(f_star(n))
        assert mu == expand_trace_polynomial(g_reference(n)), p
    assert g_reference(0)[0] == 67 and g_reference(1)[0] == 163

    # Entries of f* as polynomials in n: fit a cubic through n = 0..3 and confirm on n = 4, 5.
    nodes = (0, 1, 2, 3)
    mats = {n: f_star(n) for n in range(6)}

    def entry_poly(i, j):
        total = Polynomial(())
        for a in nodes:
            basis = Polynomial((1,))
            for b in nodes:
                if b != a:
                    basis = basis * Polynomial((Fraction(-b, a - b), Fraction(1, a - b)))
            total = total + basis * mats[a][i, j]
        return total

    sym = [[entry_poly(i, j) for j in range(22)] for i in range(22)]
    for n in (4, 5):
        assert all(sym[i][j](n) == mats[n][i, j] for i in range(22) for j in range(22))
    # mu coefficients have degree <= 3 * 22 in n, so agreement at 67 values of n is an identity
    for n in range(67):
        M = Matrix([[int(e(n)) for e in row] for row in sym])
        assert char_poly_exact(M) == expand_trace_polynomial(g_reference(n)), n


@criterion(8, "no cyclotomic factor; g has 10 roots in (-2, 2] and 1 above 2; isSalem22")
def test_salem_certification():
    for p in PRIMES:
        v = salem_verdict(f_star((p - 3) // 4))
        factors, rest = strip_cyclotomic_factors(v.mu)
        assert factors == [] and rest == v.mu
        assert v.root_profile == (10, 1)
        assert v.is_salem22


@criterion(9, "the single translation by P has no Salem factor")
def test_zero_entropy_control():
    for p in PRIMES:
        v = salem_verdict(compose_word(["P"], build_ns_model(p)))
        assert v.trace_g is None and not v.is_salem22
        assert v.salem_factor.degree == 0


@criterion(10, "sections P, R on X (p = 7, 11, 19), P', R' on Y over Q[z]/(z^4+1), pullback")
def test_weierstrass():
    for p in (7, 11, 19):
        X = x_model(p)
        xs = x_sections(p)
        assert verify_section(X, xs["P"]) and verify_section(X, xs["R"])
        ys = y_sections(find_eighth_root(p))
        assert inseparable_pullback(ys["P'"], p) == xs["P"]
    z = Cyclo8Element.z()
    Y = y_model(z.lift(1))
    assert all(verify_section(Y, s) for s in y_sections(z).values())


@criterion(11, "Kodaira types (III*, I0*, III*) on X and (III, I0*, III) on Y")
def test_kodaira():
    t = Polynomial.x()
    for a, kinds, delta in ((X_COEFF, ("III*", "I0*", "III*"), t ** 9 * (t - 1) ** 6),
                            (Y_COEFF, ("III", "I0*", "III"), t ** 3 * (t - 1) ** 6)):
        assert a ** 3 * (-64) == delta * (-64)
        places = {pl.position: pl.kind for pl in classify_kodaira(a)}
        assert (places["t=0"], places["t=1"], places["t=inf"]) == kinds


def _cofactor(rows):
    if len(rows) == 1:
        return rows[0][0]
    return sum((-1) ** j * a * _cofactor([r[:j] + r[j + 1:] for r in rows[1:]])
               for j, a in enumerate(rows[0]) if a)


@criterion(12, "oracles: det vs cofactor, char poly vs det(tI - M), height formula vs projection")
def test_oracles():
    rng = random.Random(12)
    for _ in range(1000):
        k = rng.randint(1, 5)
        rows = [[rng.randint(-9, 9) for _ in range(k)] for _ in range(k)]
        assert det_exact(Matrix(rows)) == _cofactor(rows)
    for _ in range(50):
        k = rng.randint(1, 6)
        M = Matrix([[rng.randint(-5, 5) for _ in range(k)] for _ in range(k)])
        mu = char_poly_exact(M)
        assert all(mu(t) == det_exact(Matrix.identity(k).scale(t) - M) for t in range(-2, 3))
    for p in (3, 7):
        m = build_ns_model(p)
        for f in (standard_fibration(m),) + alternative_fibrations(m):
            labs = (f.zero_label,) + tuple(l for l, _ in f.sections)
            for a, b in product(labs, repeat=2):
                A, B = _sec(f, a), _sec(f, b)
                assert height_pairing(A, B, f) == height_by_projection(A, B, f)


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except BaseException:
                pass
    failed = [r for r in RESULTS if not r[2]]
    raise SystemExit(1 if failed else 0)
