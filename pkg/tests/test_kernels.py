"""Backend parity: the compiled tape kernels and the numpy fallback must
implement identical semantics (values, derivatives, and error codes)."""

import os

import numpy as np
import pytest

from isowork import _ops, _tape_py
from isowork.backend import BACKEND
from isowork.exprlang import compile_ast, parse
from isowork.verify import random_expr

compiled = pytest.importorskip(
    "isowork._tape", reason="compiled extension not built")


def test_backend_selection():
    if os.environ.get("ISOWORK_PURE_PYTHON") == "1":
        assert BACKEND == "python"
    else:
        assert BACKEND == "compiled"


def test_opcode_tables_agree():
    names = {"CONST": _ops.OP_CONST, "VAR": _ops.OP_VAR, "NEG": _ops.OP_NEG,
             "ADD": _ops.OP_ADD, "SUB": _ops.OP_SUB, "MUL": _ops.OP_MUL,
             "DIV": _ops.OP_DIV, "POW": _ops.OP_POW, "SIN": _ops.OP_SIN,
             "COS": _ops.OP_COS, "TAN": _ops.OP_TAN, "EXP": _ops.OP_EXP,
             "LOG": _ops.OP_LOG, "SQRT": _ops.OP_SQRT, "ABS": _ops.OP_ABS}
    assert compiled.OPCODES == names
    assert compiled.ERRCODES == {"DIV": _ops.E_DIV, "LOG": _ops.E_LOG,
                                 "SQRT": _ops.E_SQRT, "POW": _ops.E_POW}


def _run_both(fn_name, prog, arrays, n_out):
    outs = []
    for impl in (compiled, _tape_py):
        out = [np.empty(n_out) for _ in range(2 if "dual" in fn_name else 1)]
        err = getattr(impl, fn_name)(prog.code, prog.consts, prog.stack_need,
                                     *arrays, *out)
        outs.append((err, out))
    return outs


def _assert_close(a, b):
    # numpy's SIMD transcendentals and libm may differ by a few ulps, which
    # compounds through a tape; anything beyond this scale-aware bound is a
    # genuine semantic divergence between the backends
    if not np.all(np.isfinite(a)):
        assert np.array_equal(np.isfinite(a), np.isfinite(b))
        mask = np.isfinite(a)
        a, b = a[mask], b[mask]
    scale = max(1.0, float(np.max(np.abs(a), initial=0.0)))
    assert float(np.max(np.abs(a - b), initial=0.0)) <= 1e-11 * scale


def test_value_parity_random_programs():
    rng = np.random.default_rng(41)
    n = 64
    for _ in range(150):
        e = random_expr(rng, int(rng.integers(0, 7)))
        prog = compile_ast(e)
        xs, ys, zs, ts = (np.ascontiguousarray(rng.uniform(0.1, 2.0, n))
                          for _ in range(4))
        (err_c, out_c), (err_p, out_p) = _run_both(
            "eval_batch", prog, (xs, ys, zs, ts), n)
        assert err_c[0] == err_p[0]
        if err_c[0] == 0:
            _assert_close(out_c[0], out_p[0])


def test_dual_parity_random_programs():
    rng = np.random.default_rng(43)
    n = 32
    for _ in range(150):
        e = random_expr(rng, int(rng.integers(0, 7)))
        prog = compile_ast(e)
        vals = [np.ascontiguousarray(rng.uniform(0.1, 2.0, n)) for _ in range(4)]
        ders = [np.ascontiguousarray(rng.uniform(-1.0, 1.0, n)) for _ in range(4)]
        (err_c, out_c), (err_p, out_p) = _run_both(
            "eval_dual_batch", prog, (*vals, *ders), n)
        assert err_c[0] == err_p[0]
        if err_c[0] == 0:
            _assert_close(out_c[0], out_p[0])
            _assert_close(out_c[1], out_p[1])


@pytest.mark.parametrize("src, envs, code", [
    ("1/x", {"x": 0.0}, _ops.E_DIV),
    ("log(x)", {"x": -1.0}, _ops.E_LOG),
    ("sqrt(x)", {"x": -0.5}, _ops.E_SQRT),
    ("x^y", {"x": -2.0, "y": 0.5}, _ops.E_POW),
    ("x^y", {"x": 0.0, "y": -1.0}, _ops.E_POW),
])
def test_error_code_parity(src, envs, code):
    prog = compile_ast(parse(src))
    n = 3
    arrays = [np.full(n, envs.get(v, 1.0)) for v in ("x", "y", "z", "t")]
    (err_c, _), (err_p, _) = _run_both("eval_batch", prog, arrays, n)
    assert err_c[0] == code
    assert err_p[0] == code


def test_deep_stack_heap_path():
    # force stack_need > 64 to exercise the malloc branch
    src = "1" + " + (1" * 70 + ")" * 70
    prog = compile_ast(parse(src))
    assert prog.stack_need > 64
    vals = prog.eval(n=5)
    np.testing.assert_allclose(vals, 71.0)
