# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tape kernels: stack-machine evaluation of expression programs.

Semantics are defined once in `isowork._ops` (opcodes, domain-error rules,
dual-number rules); this module and `_tape_py` are interchangeable backends.
"""

from libc.math cimport sin, cos, tan, exp, log, sqrt, fabs, floor, pow
from libc.stdlib cimport malloc, free

BACKEND_NAME = "compiled"

cdef enum:
    OP_CONST = 0
    OP_VAR = 1
    OP_NEG = 2
    OP_ADD = 3
    OP_SUB = 4
    OP_MUL = 5
    OP_DIV = 6
    OP_POW = 7
    OP_SIN = 8
    OP_COS = 9
    OP_TAN = 10
    OP_EXP = 11
    OP_LOG = 12
    OP_SQRT = 13
    OP_ABS = 14

cdef enum:
    E_NONE = 0
    E_DIV = 1
    E_LOG = 2
    E_SQRT = 3
    E_POW = 4

# Exported so tests can assert the two backends agree on the encoding.
OPCODES = {
    "CONST": OP_CONST, "VAR": OP_VAR, "NEG": OP_NEG, "ADD": OP_ADD,
    "SUB": OP_SUB, "MUL": OP_MUL, "DIV": OP_DIV, "POW": OP_POW,
    "SIN": OP_SIN, "COS": OP_COS, "TAN": OP_TAN, "EXP": OP_EXP,
    "LOG": OP_LOG, "SQRT": OP_SQRT, "ABS": OP_ABS,
}
ERRCODES = {"DIV": E_DIV, "LOG": E_LOG, "SQRT": E_SQRT, "POW": E_POW}


def eval_batch(const int[::1] code, const double[::1] consts, int stack_need,
               const double[::1] xs, const double[::1] ys,
               const double[::1] zs, const double[::1] ts,
               double[::1] out):
    """Evaluate the tape at n points; returns (err_code, err_index)."""
    cdef Py_ssize_t n = out.shape[0]
    cdef Py_ssize_t m = code.shape[0] // 2
    cdef Py_ssize_t i, pc
    cdef int op, arg, sp
    cdef int err = E_NONE
    cdef Py_ssize_t err_i = -1
    cdef double a, b
    cdef double local[64]
    cdef double* stack = local
    cdef bint heap = stack_need > 64
    if heap:
        stack = <double*> malloc(stack_need * sizeof(double))
        if stack == NULL:
            raise MemoryError()
    try:
        for i in range(n):
            sp = 0
            for pc in range(m):
                op = code[2 * pc]
                arg = code[2 * pc + 1]
                if op == OP_CONST:
                    stack[sp] = consts[arg]
                    sp += 1
                elif op == OP_VAR:
                    if arg == 0:
                        stack[sp] = xs[i]
                    elif arg == 1:
                        stack[sp] = ys[i]
                    elif arg == 2:
                        stack[sp] = zs[i]
                    else:
                        stack[sp] = ts[i]
                    sp += 1
                elif op == OP_NEG:
                    stack[sp - 1] = -stack[sp - 1]
                elif op == OP_ADD:
                    sp -= 1
                    stack[sp - 1] = stack[sp - 1] + stack[sp]
                elif op == OP_SUB:
                    sp -= 1
                    stack[sp - 1] = stack[sp - 1] - stack[sp]
                elif op == OP_MUL:
                    sp -= 1
                    stack[sp - 1] = stack[sp - 1] * stack[sp]
                elif op == OP_DIV:
                    sp -= 1
                    if stack[sp] == 0.0:
                        err = E_DIV
                        err_i = i
                        break
                    stack[sp - 1] = stack[sp - 1] / stack[sp]
                elif op == OP_POW:
                    sp -= 1
                    a = stack[sp - 1]
                    b = stack[sp]
                    if (a < 0.0 and b != floor(b)) or (a == 0.0 and b < 0.0):
                        err = E_POW
                        err_i = i
                        break
                    stack[sp - 1] = pow(a, b)
                elif op == OP_SIN:
                    stack[sp - 1] = sin(stack[sp - 1])
                elif op == OP_COS:
                    stack[sp - 1] = cos(stack[sp - 1])
                elif op == OP_TAN:
                    stack[sp - 1] = tan(stack[sp - 1])
                elif op == OP_EXP:
                    stack[sp - 1] = exp(stack[sp - 1])
                elif op == OP_LOG:
                    if stack[sp - 1] <= 0.0:
                        err = E_LOG
                        err_i = i
                        break
                    stack[sp - 1] = log(stack[sp - 1])
                elif op == OP_SQRT:
                    if stack[sp - 1] < 0.0:
                        err = E_SQRT
                        err_i = i
                        break
                    stack[sp - 1] = sqrt(stack[sp - 1])
                elif op == OP_ABS:
                    stack[sp - 1] = fabs(stack[sp - 1])
                else:
                    raise ValueError(f"bad opcode {op}")
            if err != E_NONE:
                break
            out[i] = stack[0]
    finally:
        if heap:
            free(stack)
    return err, err_i


def eval_dual_batch(const int[::1] code, const double[::1] consts, int stack_need,
                    const double[::1] xs, const double[::1] ys,
                    const double[::1] zs, const double[::1] ts,
                    const double[::1] dxs, const double[::1] dys,
                    const double[::1] dzs, const double[::1] dts,
                    double[::1] out_val, double[::1] out_der):
    """Dual-number tape evaluation; returns (err_code, err_index)."""
    cdef Py_ssize_t n = out_val.shape[0]
    cdef Py_ssize_t m = code.shape[0] // 2
    cdef Py_ssize_t i, pc
    cdef int op, arg, sp
    cdef int err = E_NONE
    cdef Py_ssize_t err_i = -1
    cdef double va, da, vb, db, v, dv
    cdef double vlocal[64]
    cdef double dlocal[64]
    cdef double* vstack = vlocal
    cdef double* dstack = dlocal
    cdef bint heap = stack_need > 64
    if heap:
        vstack = <double*> malloc(2 * stack_need * sizeof(double))
        if vstack == NULL:
            raise MemoryError()
        dstack = vstack + stack_need
    try:
        for i in range(n):
            sp = 0
            for pc in range(m):
                op = code[2 * pc]
                arg = code[2 * pc + 1]
                if op == OP_CONST:
                    vstack[sp] = consts[arg]
                    dstack[sp] = 0.0
                    sp += 1
                elif op == OP_VAR:
                    if arg == 0:
                        vstack[sp] = xs[i]
                        dstack[sp] = dxs[i]
                    elif arg == 1:
                        vstack[sp] = ys[i]
                        dstack[sp] = dys[i]
                    elif arg == 2:
                        vstack[sp] = zs[i]
                        dstack[sp] = dzs[i]
                    else:
                        vstack[sp] = ts[i]
                        dstack[sp] = dts[i]
                    sp += 1
                elif op == OP_NEG:
                    vstack[sp - 1] = -vstack[sp - 1]
                    dstack[sp - 1] = -dstack[sp - 1]
                elif op == OP_ADD:
                    sp -= 1
                    vstack[sp - 1] = vstack[sp - 1] + vstack[sp]
                    dstack[sp - 1] = dstack[sp - 1] + dstack[sp]
                elif op == OP_SUB:
                    sp -= 1
                    vstack[sp - 1] = vstack[sp - 1] - vstack[sp]
                    dstack[sp - 1] = dstack[sp - 1] - dstack[sp]
                elif op == OP_MUL:
                    sp -= 1
                    va = vstack[sp - 1]
                    da = dstack[sp - 1]
                    vb = vstack[sp]
                    db = dstack[sp]
                    vstack[sp - 1] = va * vb
                    dstack[sp - 1] = da * vb + va * db
                elif op == OP_DIV:
                    sp -= 1
                    va = vstack[sp - 1]
                    da = dstack[sp - 1]
                    vb = vstack[sp]
                    db = dstack[sp]
                    if vb == 0.0:
                        err = E_DIV
                        err_i = i
                        break
                    v = va / vb
                    vstack[sp - 1] = v
                    dstack[sp - 1] = (da - v * db) / vb
                elif op == OP_POW:
                    sp -= 1
                    va = vstack[sp - 1]
                    da = dstack[sp - 1]
                    vb = vstack[sp]
                    db = dstack[sp]
                    if (va < 0.0 and vb != floor(vb)) or (va == 0.0 and vb < 0.0):
                        err = E_POW
                        err_i = i
                        break
                    v = pow(va, vb)
                    if db == 0.0:
                        if vb == 0.0:
                            dv = 0.0
                        elif va == 0.0:
                            if vb == 1.0:
                                dv = da
                            elif vb > 1.0:
                                dv = 0.0
                            elif da == 0.0:
                                dv = 0.0
                            else:
                                err = E_POW
                                err_i = i
                                break
                        else:
                            dv = vb * pow(va, vb - 1.0) * da
                    else:
                        if va <= 0.0:
                            err = E_POW
                            err_i = i
                            break
                        dv = v * (db * log(va) + vb * da / va)
                    vstack[sp - 1] = v
                    dstack[sp - 1] = dv
                elif op == OP_SIN:
                    va = vstack[sp - 1]
                    vstack[sp - 1] = sin(va)
                    dstack[sp - 1] = dstack[sp - 1] * cos(va)
                elif op == OP_COS:
                    va = vstack[sp - 1]
                    vstack[sp - 1] = cos(va)
                    dstack[sp - 1] = -dstack[sp - 1] * sin(va)
                elif op == OP_TAN:
                    v = tan(vstack[sp - 1])
                    vstack[sp - 1] = v
                    dstack[sp - 1] = dstack[sp - 1] * (1.0 + v * v)
                elif op == OP_EXP:
                    v = exp(vstack[sp - 1])
                    vstack[sp - 1] = v
                    dstack[sp - 1] = dstack[sp - 1] * v
                elif op == OP_LOG:
                    va = vstack[sp - 1]
                    if va <= 0.0:
                        err = E_LOG
                        err_i = i
                        break
                    vstack[sp - 1] = log(va)
                    dstack[sp - 1] = dstack[sp - 1] / va
                elif op == OP_SQRT:
                    va = vstack[sp - 1]
                    if va < 0.0 or (va == 0.0 and dstack[sp - 1] != 0.0):
                        err = E_SQRT
                        err_i = i
                        break
                    v = sqrt(va)
                    vstack[sp - 1] = v
                    dstack[sp - 1] = dstack[sp - 1] / (2.0 * v) if va > 0.0 else 0.0
                elif op == OP_ABS:
                    va = vstack[sp - 1]
                    vstack[sp - 1] = fabs(va)
                    if va > 0.0:
                        pass
                    elif va < 0.0:
                        dstack[sp - 1] = -dstack[sp - 1]
                    else:
                        dstack[sp - 1] = 0.0
                else:
                    raise ValueError(f"bad opcode {op}")
            if err != E_NONE:
                break
            out_val[i] = vstack[0]
            out_der[i] = dstack[0]
    finally:
        if heap:
            free(vstack)
    return err, err_i
