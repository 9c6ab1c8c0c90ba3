"""Pure-Python tape kernels: vectorized numpy fallback for `isowork._tape`.

Same call surface and semantics as the compiled extension (see `_ops` for
the shared opcode table and domain/dual rules).  Each call evaluates one
program over a whole batch of points, so the per-instruction numpy overhead
is amortized across the batch.

Error reporting: both backends return (err_code, err_index) with err_code 0
on success.  The index identifies *an* offending point; the scan order is
backend-specific (per-point here per-op, per-op per-point in the compiled
core), so only the error code is contractual.
"""

import numpy as np

from ._ops import (
    E_DIV,
    E_LOG,
    E_NONE,
    E_POW,
    E_SQRT,
    OP_ABS,
    OP_ADD,
    OP_CONST,
    OP_COS,
    OP_DIV,
    OP_EXP,
    OP_LOG,
    OP_MUL,
    OP_NEG,
    OP_POW,
    OP_SIN,
    OP_SQRT,
    OP_SUB,
    OP_TAN,
    OP_VAR,
)

BACKEND_NAME = "python"

_QUIET = {"divide": "ignore", "over": "ignore", "invalid": "ignore", "under": "ignore"}


def _first(mask):
    return int(np.argmax(mask))


def eval_batch(code, consts, stack_need, xs, ys, zs, ts, out):
    """Evaluate the tape at n points; write values into `out`."""
    n = out.shape[0]
    variables = (xs, ys, zs, ts)
    stack = np.empty((stack_need, n))
    sp = 0
    m = len(code) // 2
    with np.errstate(**_QUIET):
        for pc in range(m):
            op = code[2 * pc]
            arg = code[2 * pc + 1]
            if op == OP_CONST:
                stack[sp] = consts[arg]
                sp += 1
            elif op == OP_VAR:
                stack[sp] = variables[arg]
                sp += 1
            elif op == OP_NEG:
                np.negative(stack[sp - 1], out=stack[sp - 1])
            elif op == OP_ADD:
                sp -= 1
                np.add(stack[sp - 1], stack[sp], out=stack[sp - 1])
            elif op == OP_SUB:
                sp -= 1
                np.subtract(stack[sp - 1], stack[sp], out=stack[sp - 1])
            elif op == OP_MUL:
                sp -= 1
                np.multiply(stack[sp - 1], stack[sp], out=stack[sp - 1])
            elif op == OP_DIV:
                sp -= 1
                bad = stack[sp] == 0.0
                if bad.any():
                    return E_DIV, _first(bad)
                np.divide(stack[sp - 1], stack[sp], out=stack[sp - 1])
            elif op == OP_POW:
                sp -= 1
                a, b = stack[sp - 1], stack[sp]
                bad = ((a < 0) & (b != np.floor(b))) | ((a == 0) & (b < 0))
                if bad.any():
                    return E_POW, _first(bad)
                np.power(a, b, out=a)
            elif op == OP_SIN:
                np.sin(stack[sp - 1], out=stack[sp - 1])
            elif op == OP_COS:
                np.cos(stack[sp - 1], out=stack[sp - 1])
            elif op == OP_TAN:
                np.tan(stack[sp - 1], out=stack[sp - 1])
            elif op == OP_EXP:
                np.exp(stack[sp - 1], out=stack[sp - 1])
            elif op == OP_LOG:
                bad = stack[sp - 1] <= 0.0
                if bad.any():
                    return E_LOG, _first(bad)
                np.log(stack[sp - 1], out=stack[sp - 1])
            elif op == OP_SQRT:
                bad = stack[sp - 1] < 0.0
                if bad.any():
                    return E_SQRT, _first(bad)
                np.sqrt(stack[sp - 1], out=stack[sp - 1])
            elif op == OP_ABS:
                np.abs(stack[sp - 1], out=stack[sp - 1])
            else:
                raise ValueError(f"bad opcode {op}")
    out[:] = stack[0]
    return E_NONE, -1


def _pow_dual(va, da, vb, db):
    """Dual POW per the table in `_ops`; returns (v, dv) or an error tuple."""
    bad = ((va < 0) & (vb != np.floor(vb))) | ((va == 0) & (vb < 0))
    if bad.any():
        return None, (E_POW, _first(bad))
    v = np.power(va, vb)
    dv = np.zeros_like(v)

    db0 = db == 0.0
    main = db0 & (vb != 0.0) & (va != 0.0)
    if main.any():
        dv[main] = vb[main] * np.power(va[main], vb[main] - 1.0) * da[main]
    lin = db0 & (va == 0.0) & (vb == 1.0)
    if lin.any():
        dv[lin] = da[lin]
    cusp = db0 & (va == 0.0) & (vb > 0.0) & (vb < 1.0) & (da != 0.0)
    if cusp.any():
        return None, (E_POW, _first(cusp))

    var_exp = ~db0
    if var_exp.any():
        idx = np.where(var_exp)[0]
        nonpos = va[idx] <= 0.0
        if nonpos.any():
            return None, (E_POW, int(idx[np.argmax(nonpos)]))
        dv[idx] = v[idx] * (db[idx] * np.log(va[idx]) + vb[idx] * da[idx] / va[idx])
    return (v, dv), None


def eval_dual_batch(code, consts, stack_need, xs, ys, zs, ts, dxs, dys, dzs, dts,
                    out_val, out_der):
    """Evaluate the tape with dual numbers; write (value, d/dparam) arrays."""
    n = out_val.shape[0]
    variables = (xs, ys, zs, ts)
    dvariables = (dxs, dys, dzs, dts)
    vstack = np.empty((stack_need, n))
    dstack = np.empty((stack_need, n))
    sp = 0
    m = len(code) // 2
    with np.errstate(**_QUIET):
        for pc in range(m):
            op = code[2 * pc]
            arg = code[2 * pc + 1]
            if op == OP_CONST:
                vstack[sp] = consts[arg]
                dstack[sp] = 0.0
                sp += 1
            elif op == OP_VAR:
                vstack[sp] = variables[arg]
                dstack[sp] = dvariables[arg]
                sp += 1
            elif op == OP_NEG:
                np.negative(vstack[sp - 1], out=vstack[sp - 1])
                np.negative(dstack[sp - 1], out=dstack[sp - 1])
            elif op == OP_ADD:
                sp -= 1
                np.add(vstack[sp - 1], vstack[sp], out=vstack[sp - 1])
                np.add(dstack[sp - 1], dstack[sp], out=dstack[sp - 1])
            elif op == OP_SUB:
                sp -= 1
                np.subtract(vstack[sp - 1], vstack[sp], out=vstack[sp - 1])
                np.subtract(dstack[sp - 1], dstack[sp], out=dstack[sp - 1])
            elif op == OP_MUL:
                sp -= 1
                va, da = vstack[sp - 1], dstack[sp - 1]
                vb, db = vstack[sp], dstack[sp]
                dstack[sp - 1] = da * vb + va * db
                np.multiply(va, vb, out=vstack[sp - 1])
            elif op == OP_DIV:
                sp -= 1
                va, da = vstack[sp - 1], dstack[sp - 1]
                vb, db = vstack[sp], dstack[sp]
                bad = vb == 0.0
                if bad.any():
                    return E_DIV, _first(bad)
                v = va / vb
                dstack[sp - 1] = (da - v * db) / vb
                vstack[sp - 1] = v
            elif op == OP_POW:
                sp -= 1
                res, err = _pow_dual(vstack[sp - 1], dstack[sp - 1],
                                     vstack[sp], dstack[sp])
                if err is not None:
                    return err
                vstack[sp - 1], dstack[sp - 1] = res
            elif op == OP_SIN:
                a = vstack[sp - 1]
                np.multiply(dstack[sp - 1], np.cos(a), out=dstack[sp - 1])
                np.sin(a, out=vstack[sp - 1])
            elif op == OP_COS:
                a = vstack[sp - 1]
                np.multiply(dstack[sp - 1], -np.sin(a), out=dstack[sp - 1])
                np.cos(a, out=vstack[sp - 1])
            elif op == OP_TAN:
                v = np.tan(vstack[sp - 1])
                np.multiply(dstack[sp - 1], 1.0 + v * v, out=dstack[sp - 1])
                vstack[sp - 1] = v
            elif op == OP_EXP:
                np.exp(vstack[sp - 1], out=vstack[sp - 1])
                np.multiply(dstack[sp - 1], vstack[sp - 1], out=dstack[sp - 1])
            elif op == OP_LOG:
                a = vstack[sp - 1]
                bad = a <= 0.0
                if bad.any():
                    return E_LOG, _first(bad)
                np.divide(dstack[sp - 1], a, out=dstack[sp - 1])
                np.log(a, out=vstack[sp - 1])
            elif op == OP_SQRT:
                a = vstack[sp - 1]
                bad = a < 0.0
                if bad.any():
                    return E_SQRT, _first(bad)
                cusp = (a == 0.0) & (dstack[sp - 1] != 0.0)
                if cusp.any():
                    return E_SQRT, _first(cusp)
                v = np.sqrt(a)
                dstack[sp - 1] = np.where(a > 0.0, dstack[sp - 1] / (2.0 * v), 0.0)
                vstack[sp - 1] = v
            elif op == OP_ABS:
                a = vstack[sp - 1]
                np.multiply(dstack[sp - 1], np.sign(a), out=dstack[sp - 1])
                np.abs(a, out=vstack[sp - 1])
            else:
                raise ValueError(f"bad opcode {op}")
    out_val[:] = vstack[0]
    out_der[:] = dstack[0]
    return E_NONE, -1
