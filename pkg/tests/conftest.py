from pathlib import Path

import pytest

from k3salem.exact import Polynomial
from k3salem.ns_model import build_ns_model

DATA = Path(__file__).parent / "data"
PRIMES = (3, 7, 11, 19, 23)


def reference_gram(n: int) -> list[list[int]]:
    """The reference 22x22 intersection matrix with its symbolic entries evaluated at n."""
    def ev(tok):
        return {"n": n, "2n": 2 * n}[tok] if tok in ("n", "2n") else int(tok)

    return [[ev(t) for t in line.split()] for line in (DATA / "reference_gram.txt").read_text().splitlines()]


def g_reference(n: int) -> Polynomial:
    """Trace polynomial g, coefficients of (x + 1/x)^0 ... ^11, reference values."""
    N = n
    return Polynomial([
        8 * N**2 + 88 * N + 67,
        -88 * N**3 - 392 * N**2 - 976 * N - 574,
        -232 * N**3 - 1474 * N**2 - 2854 * N - 1464,
        534 * N**3 + 2526 * N**2 + 4605 * N + 2359,
        578 * N**3 + 3415 * N**2 + 6196 * N + 3062,
        -568 * N**3 - 2749 * N**2 - 4587 * N - 2245,
        -466 * N**3 - 2689 * N**2 - 4681 * N - 2253,
        206 * N**3 + 1014 * N**2 + 1600 * N + 770,
        148 * N**3 + 849 * N**2 + 1426 * N + 670,
        -24 * N**3 - 120 * N**2 - 182 * N - 91,
        -16 * N**3 - 92 * N**2 - 150 * N - 69,
        1,
    ])


P_PLUS_R = (1, 2, -2, 0, 0, 0, 0, 0, 0, 0, -3, -4, -5, -6, -3, -4, -2, -1, -2, 0, 1, 1)


@pytest.fixture(scope="session", params=PRIMES)
def model(request):
    return build_ns_model(request.param)


@pytest.fixture(scope="session")
def x3():
    return build_ns_model(3)


@pytest.fixture(scope="session")
def x7():
    return build_ns_model(7)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(RESULTS):
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))
