"""Opcode table for the expression tape shared by both kernel backends.

A compiled expression is a flat stack program: int32 pairs (op, arg) plus a
float64 constant pool.  `arg` is a constant-pool index for CONST, a variable
slot for VAR (0=x, 1=y, 2=z, 3=t), and unused otherwise.

Both backends (`_tape` compiled, `_tape_py` vectorized numpy) implement the
same semantics, including the domain-error rules:

  DIV    divisor == 0                          -> E_DIV
  LOG    argument <= 0                         -> E_LOG
  SQRT   argument < 0                          -> E_SQRT
  POW    base < 0 with non-integer exponent    -> E_POW
         base == 0 with negative exponent      -> E_POW

and the dual-number (value, d/dt) rules.  The only nontrivial dual rule is
POW(a, b) with duals (a, da), (b, db):

  db == 0:  b == 0          -> dv = 0
            a == 0, b == 1  -> dv = da
            a == 0, b  > 1  -> dv = 0
            a == 0, 0<b<1   -> dv = 0 if da == 0 else E_POW (one-sided cusp)
            otherwise       -> dv = b * a**(b-1) * da
  db != 0:  requires a > 0  -> dv = v * (db*log(a) + b*da/a), else E_POW

SQRT at 0 with da != 0 is likewise E_POW-style unbounded: E_SQRT unless
da == 0.  ABS uses sign(a)*da with sign(0) = 0.
"""

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

VAR_SLOTS = {"x": 0, "y": 1, "z": 2, "t": 3}

E_NONE = 0
E_DIV = 1
E_LOG = 2
E_SQRT = 3
E_POW = 4

ERROR_MESSAGES = {
    E_DIV: "division by zero",
    E_LOG: "log of a non-positive argument",
    E_SQRT: "sqrt of a negative argument",
    E_POW: "power outside the real domain",
}
