"""Compilation of ASTs to flat stack programs and batched evaluation.

The tape format and evaluation semantics live in `isowork._ops`; the actual
inner loops in the selected `isowork.backend`.  Programs are compiled once
per AST (LRU-cached) and evaluated over whole batches of points.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .. import backend
from .._ops import (
    ERROR_MESSAGES,
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
    VAR_SLOTS,
)
from ..errors import DomainError
from .nodes import Bin, Call, Expr, Neg, Num, Var

_BIN_OPS = {"+": OP_ADD, "-": OP_SUB, "*": OP_MUL, "/": OP_DIV, "^": OP_POW}
_CALL_OPS = {"sin": OP_SIN, "cos": OP_COS, "tan": OP_TAN, "exp": OP_EXP,
             "log": OP_LOG, "sqrt": OP_SQRT, "abs": OP_ABS}


class Program:
    """A compiled expression: int32 (op, arg) pairs plus a constant pool."""

    __slots__ = ("code", "consts", "stack_need")

    def __init__(self, code, consts, stack_need):
        self.code = code
        self.consts = consts
        self.stack_need = stack_need

    def eval(self, xs=0.0, ys=0.0, zs=0.0, ts=0.0, n=None):
        """Evaluate at a batch of points; scalars broadcast.  Returns float64
        array of length n (inferred from the longest argument)."""
        xs, ys, zs, ts, n = _broadcast(xs, ys, zs, ts, n)
        out = np.empty(n)
        err, idx = backend.eval_batch(self.code, self.consts, self.stack_need,
                                      xs, ys, zs, ts, out)
        if err:
            raise DomainError(f"{ERROR_MESSAGES[err]} (point index {idx})")
        return out

    def eval_dual(self, xs=0.0, ys=0.0, zs=0.0, ts=0.0,
                  dxs=0.0, dys=0.0, dzs=0.0, dts=0.0, n=None):
        """Dual evaluation; returns (values, derivatives) float64 arrays."""
        xs, ys, zs, ts, n = _broadcast(xs, ys, zs, ts, n)
        dxs, dys, dzs, dts, n = _broadcast(dxs, dys, dzs, dts, n)
        out_val = np.empty(n)
        out_der = np.empty(n)
        err, idx = backend.eval_dual_batch(
            self.code, self.consts, self.stack_need,
            xs, ys, zs, ts, dxs, dys, dzs, dts, out_val, out_der)
        if err:
            raise DomainError(f"{ERROR_MESSAGES[err]} (point index {idx})")
        return out_val, out_der


def _broadcast(a, b, c, d, n):
    arrays = [None, None, None, None]
    for i, v in enumerate((a, b, c, d)):
        if isinstance(v, np.ndarray):
            arrays[i] = np.ascontiguousarray(v, dtype=np.float64)
            if n is None:
                n = arrays[i].shape[0]
            elif arrays[i].shape[0] != n:
                raise ValueError("mismatched batch lengths")
    if n is None:
        n = 1
    for i, v in enumerate((a, b, c, d)):
        if arrays[i] is None:
            arrays[i] = np.full(n, float(v))
    return arrays[0], arrays[1], arrays[2], arrays[3], n


@lru_cache(maxsize=4096)
def compile_ast(e: Expr) -> Program:
    """Compile an AST to a tape (cached; ASTs are frozen/hashable)."""
    code: list[int] = []
    consts: list[float] = []

    def emit(node, depth):
        if isinstance(node, Num):
            code.extend((OP_CONST, len(consts)))
            consts.append(float(node.value))
            return depth + 1
        if isinstance(node, Var):
            code.extend((OP_VAR, VAR_SLOTS[node.name]))
            return depth + 1
        if isinstance(node, Neg):
            top = emit(node.arg, depth)
            code.extend((OP_NEG, 0))
            return top
        if isinstance(node, Bin):
            top_l = emit(node.lhs, depth)
            top_r = emit(node.rhs, depth + 1)
            code.extend((_BIN_OPS[node.op], 0))
            return max(top_l, top_r)
        if isinstance(node, Call):
            top = emit(node.arg, depth)
            code.extend((_CALL_OPS[node.fn], 0))
            return top
        raise TypeError(f"not an expression node: {node!r}")

    stack_need = emit(e, 0)
    return Program(np.asarray(code, dtype=np.int32),
                   np.asarray(consts, dtype=np.float64),
                   stack_need)
