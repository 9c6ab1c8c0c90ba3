"""Scalar expression language: parsing, evaluation, and forward-mode duals.

Variables are restricted to x, y, z, t; functions to sin, cos, tan, exp,
log, sqrt, abs; `pi` and `e` are named literals.  Evaluation is IEEE-754
double precision and deterministic; derivatives are exact dual-number
derivatives, not finite differences.
"""

from .nodes import (
    FUNCTIONS,
    NAMED_LITERALS,
    VARIABLES,
    Bin,
    Call,
    DualValue,
    Expr,
    Neg,
    Num,
    Var,
    pretty_print,
    substitute,
    used_variables,
)
from .parser import parse
from .program import Program, compile_ast

__all__ = [
    "Bin", "Call", "DualValue", "Expr", "Neg", "Num", "Var",
    "FUNCTIONS", "NAMED_LITERALS", "VARIABLES",
    "parse", "pretty_print", "substitute", "used_variables",
    "Program", "compile_ast", "evaluate", "eval_dual",
]


def _check_bound(e, env):
    missing = used_variables(e) - set(env)
    if missing:
        raise KeyError(f"unbound variable(s): {sorted(missing)}")


def evaluate(e: Expr, env: dict[str, float]) -> float:
    """Evaluate `e` with variables bound to reals."""
    _check_bound(e, env)
    prog = compile_ast(e)
    vals = prog.eval(xs=env.get("x", 0.0), ys=env.get("y", 0.0),
                     zs=env.get("z", 0.0), ts=env.get("t", 0.0), n=1)
    return float(vals[0])


def eval_dual(e: Expr, env: dict[str, DualValue]) -> DualValue:
    """Evaluate `e` with variables bound to dual numbers; the result carries
    the exact chain-rule derivative of the composite."""
    _check_bound(e, env)
    prog = compile_ast(e)
    zero = DualValue(0.0, 0.0)
    vx, vy, vz, vt = (env.get(name, zero) for name in ("x", "y", "z", "t"))
    vals, ders = prog.eval_dual(
        xs=vx.value, ys=vy.value, zs=vz.value, ts=vt.value,
        dxs=vx.deriv, dys=vy.deriv, dzs=vz.deriv, dts=vt.deriv, n=1)
    return DualValue(float(vals[0]), float(ders[0]))
