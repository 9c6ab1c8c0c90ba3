"""Acceptance gate: each criterion at its stated tolerance, one line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
PASS/FAIL lines.
"""

import math
import time

import numpy as np
import pytest

from isowork.errors import CheckFailure
from isowork.verify import (
    check_autodiff_vs_fd,
    check_case_b_slope,
    check_case_c_coefficient,
    check_collinear_work_zero,
    check_discriminant_identity,
    check_f_orthonormal_matrix,
    check_oracle_equivalence,
    check_quad_polynomial_exactness,
    check_table1_pattern,
    check_vieta,
    run_all,
)


def _criterion(number, description, fn, budget_seconds):
    start = time.perf_counter()
    try:
        detail = fn()
        ok = True
    except CheckFailure as exc:
        detail = str(exc)
        ok = False
    elapsed = time.perf_counter() - start
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {number:2d} {status} ({elapsed:5.2f}s)  "
          f"{description}: {detail}")
    assert ok, f"criterion {number} failed: {detail}"
    assert elapsed <= budget_seconds, (
        f"criterion {number} took {elapsed:.2f}s > {budget_seconds}s")


def test_criterion_01_case_b_slope():
    _criterion(1, "double root sqrt(2) at arccos(-1/3) within 1e-12",
               check_case_b_slope, 1.0)


def test_criterion_02_discriminant_identity():
    _criterion(2, "discriminant identity over 1000 phis within 1e-12 rel",
               check_discriminant_identity, 0.1)


def test_criterion_03_collinear_work_zero():
    _criterion(3, "200 collinear pairs: dispatch 0, direct <= 1e-9",
               check_collinear_work_zero, 2.0)


def test_criterion_04_oracle_equivalence():
    _criterion(4, "case formulas vs direct quadrature (fixed 1/6 to 1e-10)",
               check_oracle_equivalence, 5.0)


def test_criterion_05_case_c_coefficient():
    _criterion(5, "f(i+k2 j, i+k1 j) = (1+3c)/c^2 on 500 phis within 1e-12",
               check_case_c_coefficient, 0.5)


def test_criterion_06_vieta():
    _criterion(6, "Vieta relations within 1e-10 on case B/C phis",
               check_vieta, 0.5)


def test_criterion_07_orthonormal_f_matrix():
    _criterion(7, "mat_f = circulant(0,1,1) exactly; f(r,r) = 2(uv+vq+qu)",
               check_f_orthonormal_matrix, 1.0)


def test_criterion_08_table1():
    _criterion(8, "table1 reproduces the eight-row zero/nonzero pattern",
               check_table1_pattern, 1.0)


def test_criterion_09_quadrature():
    _criterion(9, "Gauss panels exact to 1e-15 through degree 29",
               check_quad_polynomial_exactness, 1.0)


def test_criterion_10_autodiff():
    _criterion(10, "dual derivatives vs central differences, 500 pairs",
               check_autodiff_vs_fd, 1.0)


def test_full_verify_under_budget():
    start = time.perf_counter()
    results = run_all(out=lambda line: None)
    elapsed = time.perf_counter() - start
    failed = [r.name for r in results if not r.ok]
    print(f"ACCEPTANCE -- full verify suite: {len(results)} checks in "
          f"{elapsed:.1f}s (budget 15s), failed: {failed or 'none'}")
    assert not failed
    assert elapsed < 15.0
