"""AST node types for the scalar expression language.

Nodes are frozen dataclasses, so structural equality and hashing come for
free; a parsed expression is immutable and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

VARIABLES = ("x", "y", "z", "t")
FUNCTIONS = ("sin", "cos", "tan", "exp", "log", "sqrt", "abs")
NAMED_LITERALS = ("pi", "e")


class Expr:
    """Base class for expression nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Num(Expr):
    value: float


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Bin(Expr):
    op: str  # one of + - * / ^
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True)
class Call(Expr):
    fn: str
    arg: Expr


@dataclass(frozen=True)
class DualValue:
    """A (value, derivative) pair; `deriv` is d/dt of the bound quantity."""

    value: float
    deriv: float


def pretty_print(e: Expr) -> str:
    """Fully parenthesized canonical text; parse(pretty_print(e)) == e for
    any parser-producible AST."""
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        return f"(-{pretty_print(e.arg)})"
    if isinstance(e, Bin):
        return f"({pretty_print(e.lhs)} {e.op} {pretty_print(e.rhs)})"
    if isinstance(e, Call):
        return f"{e.fn}({pretty_print(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")


def used_variables(e: Expr) -> set[str]:
    """Set of variable names occurring in the expression."""
    out: set[str] = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            out.add(node.name)
        elif isinstance(node, Neg):
            stack.append(node.arg)
        elif isinstance(node, Bin):
            stack.append(node.lhs)
            stack.append(node.rhs)
        elif isinstance(node, Call):
            stack.append(node.arg)
    return out


def substitute(e: Expr, name: str, replacement: Expr) -> Expr:
    """Return a copy of `e` with every Var(name) replaced by `replacement`."""
    if isinstance(e, Var):
        return replacement if e.name == name else e
    if isinstance(e, Neg):
        return Neg(substitute(e.arg, name, replacement))
    if isinstance(e, Bin):
        return Bin(e.op, substitute(e.lhs, name, replacement),
                   substitute(e.rhs, name, replacement))
    if isinstance(e, Call):
        return Call(e.fn, substitute(e.arg, name, replacement))
    return e
