import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3salem.errors import DimensionError, InputError, SingularMatrixError
from k3salem.exact import (
    Matrix, Polynomial, cauchy_bound, char_poly_exact, cyclotomic_poly, det_exact, euler_phi,
    inverse_rational, isolate_root, kernel, poly_divrem, poly_gcd, rank, smith_normal_form,
    solve_rational, squarefree_part, sturm_count,
)
from k3salem.lattice import make_root_lattice


def cofactor_det(rows):
    if not rows:
        return 1
    if len(rows) == 1:
        return rows[0][0]
    total = 0
    for j, a in enumerate(rows[0]):
        if a:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * a * cofactor_det(minor)
    return total


def test_det_matches_cofactor_expansion_on_random_matrices():
    rng = random.Random(20240611)
    for _ in range(1200):
        k = rng.randint(1, 5)
        rows = [[rng.randint(-9, 9) for _ in range(k)] for _ in range(k)]
        assert det_exact(Matrix(rows)) == cofactor_det(rows)


def test_det_small_cases():
    assert det_exact(Matrix([[0, 1], [1, 0]])) == -1
    assert det_exact(make_root_lattice("E", 7).gram) == -2
    assert det_exact(Matrix.identity(0)) == 1
    with pytest.raises(DimensionError):
        det_exact(Matrix([[1, 2, 3]]))


def test_det_no_overflow_on_large_entries():
    big = 10 ** 40
    m = Matrix([[big, 1], [1, big]])
    assert det_exact(m) == big * big - 1


def test_inverse():
    assert inverse_rational(Matrix.identity(22)) == Matrix.identity(22)
    assert inverse_rational(Matrix([[-2]])) == Matrix([[Fraction(-1, 2)]])
    a3 = make_root_lattice("A", 3).gram
    inv = inverse_rational(a3)
    assert a3 @ inv == Matrix.identity(3)
    assert all(4 % Fraction(x).denominator == 0 for r in inv.rows for x in r)
    with pytest.raises(SingularMatrixError):
        inverse_rational(Matrix([[1, 2], [2, 4]]))


def test_solve_rank_kernel():
    m = Matrix([[1, 2], [3, 4]])
    x = solve_rational(m, [5, 6])
    assert m.apply(x) == (5, 6)
    sing = Matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(sing) == 2
    (v,) = kernel(sing)
    assert sing.apply(v) == (0, 0, 0)


def _check_snf(m):
    r = smith_normal_form(m)
    d = r.diagonal
    rows, cols = m.shape
    diag = Matrix([[d[i] if i == j and i < len(d) else 0 for j in range(cols)] for i in range(rows)])
    assert r.left @ m @ r.right == diag
    assert abs(det_exact(r.left)) == 1 and abs(det_exact(r.right)) == 1
    nz = [x for x in d if x]
    assert all(x > 0 for x in d if x)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    return d


def test_snf_examples():
    assert list(_check_snf(Matrix.identity(3))) == [1, 1, 1]
    assert list(_check_snf(make_root_lattice("A", 3).gram)) == [1, 1, 4]
    assert list(_check_snf(make_root_lattice("D", 4).gram)) == [1, 1, 2, 2]


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_snf_reconstructs_random_matrices(r, c, data):
    rows = [[data.draw(st.integers(-12, 12)) for _ in range(c)] for _ in range(r)]
    _check_snf(Matrix(rows))


def test_char_poly_examples():
    assert char_poly_exact(Matrix.zeros(2, 2)) == Polynomial((0, 0, 1))
    assert char_poly_exact(Matrix.diagonal([2, 3])) == Polynomial((6, -5, 1))
    with pytest.raises(DimensionError):
        char_poly_exact(Matrix([[1, 2]]))


def test_char_poly_interpolation_oracle():
    rng = random.Random(7)
    for _ in range(60):
        k = rng.randint(1, 7)
        m = Matrix([[rng.randint(-6, 6) for _ in range(k)] for _ in range(k)])
        mu = char_poly_exact(m)
        assert mu.is_monic() and mu.degree == k
        for t in (-2, -1, 0, 1, 2):
            assert mu(t) == det_exact(Matrix.identity(k).scale(t) - m)


def test_divrem():
    x = Polynomial.x()
    q, r, ok = poly_divrem(x * x - 1, x - 1)
    assert q == x + 1 and r.is_zero() and ok
    q, r, ok = poly_divrem(x * x + 1, x - 1)
    assert r == Polynomial((2,)) and not ok
    q, r, ok = poly_divrem(x + 1, Polynomial((2,)))
    assert r.is_zero() and not ok  # quotient not integral
    with pytest.raises((InputError, ZeroDivisionError)):
        poly_divrem(x, Polynomial(()))


def test_cyclotomic_small():
    assert cyclotomic_poly(1) == Polynomial((-1, 1))
    assert cyclotomic_poly(8) == Polynomial((1, 0, 0, 0, 1))
    assert cyclotomic_poly(12) == Polynomial((1, 0, -1, 0, 1))
    with pytest.raises(InputError):
        cyclotomic_poly(0)


def test_cyclotomic_product_identity_up_to_100():
    for k in range(1, 101):
        prod = Polynomial((1,))
        for d in range(1, k + 1):
            if k % d == 0:
                prod = prod * cyclotomic_poly(d)
        assert prod == Polynomial.monomial(k) - 1
        assert cyclotomic_poly(k).degree == euler_phi(k)


def test_sturm_examples():
    assert sturm_count(Polynomial((-2, 0, 1)), 0, 2) == 1
    assert sturm_count(Polynomial((1, 0, 1)), -10, 10) == 0
    # half-open: the root at the right end counts, the one at the left does not
    x = Polynomial.x()
    p = (x - 1) * (x - 3)
    assert sturm_count(p, 1, 3) == 1
    assert sturm_count(p, 0, 1) == 1
    with pytest.raises(InputError):
        sturm_count(p, 2, 2)


@settings(max_examples=120, deadline=None)
@given(st.lists(st.integers(-8, 8), min_size=1, max_size=6),
       st.lists(st.tuples(st.integers(-5, 5), st.integers(1, 6)), max_size=3))
def test_sturm_counts_distinct_roots_of_factored_polynomials(roots, quads):
    x = Polynomial.x()
    p = Polynomial((1,))
    for r in roots:
        p = p * (x - r)
    for b, c in quads:  # x^2 + b x + c with b^2 < 4c has no real roots
        if b * b < 4 * c:
            p = p * Polynomial((c, b, 1))
    B = cauchy_bound(p)
    assert sturm_count(p, -B, B) == len(set(roots))
    assert sturm_count(p, 0, B) == len({r for r in roots if r > 0})


def test_squarefree_gcd_and_isolation():
    x = Polynomial.x()
    p = (x - 1) ** 3 * (x + 2)
    assert squarefree_part(p) == ((x - 1) * (x + 2)).monic()
    assert poly_gcd(p, (x - 1) * (x - 5)) == x - 1
    lo, hi = isolate_root(Polynomial((-2, 0, 1)), 1, 2, Fraction(1, 10 ** 12))
    assert lo * lo <= 2 <= hi * hi and hi - lo <= Fraction(1, 10 ** 12)


def test_json_round_trips():
    m = Matrix([[1, Fraction(-3, 4)], [10 ** 30, 0]])
    assert Matrix.from_json(m.to_json()) == m
    assert m.to_json()[0][1] == "-3/4"
    p = Polynomial((3, 0, -1, 10 ** 25))
    assert Polynomial.from_json(p.to_json()) == p
    assert p.to_json()["coeffs"][3] == str(10 ** 25)
