"""Exact linear algebra and polynomial arithmetic. Nothing in here rounds."""
from .matrix import (
    Matrix,
    SnfResult,
    bilinear,
    char_poly_exact,
    det_exact,
    independent_columns,
    inverse_rational,
    kernel,
    rank,
    smith_normal_form,
    solve_rational,
)
from .poly import (
    DivResult,
    Polynomial,
    cauchy_bound,
    cyclotomic_poly,
    euler_phi,
    isolate_root,
    poly_divrem,
    poly_gcd,
    squarefree_part,
    sturm_count,
)

__all__ = [
    "Matrix", "SnfResult", "bilinear", "char_poly_exact", "det_exact",
    "independent_columns", "inverse_rational", "kernel", "rank",
    "smith_normal_form", "solve_rational", "DivResult", "Polynomial",
    "cauchy_bound", "cyclotomic_poly", "euler_phi", "isolate_root",
    "poly_divrem", "poly_gcd", "squarefree_part", "sturm_count",
]
