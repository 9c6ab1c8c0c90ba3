"""Isotropic directions and work in the 2-plane span{i, Qi}.

With j = (Qi - cos(phi) i)/sin(phi) completing i to an orthonormal pair, the
associated metric has

    f(i,i) = 2c,   f(i,j) = (1-c)(1+2c)/s,   f(j,j) = -2c²/(1+c)

(c = cos phi, s = sin phi), and w = x i + y j is isotropic iff the slope
k = y/x solves

    c² k² - s(1+2c) k - (1+c) c = 0,       discriminant D = (1+c)(1+3c).

Four regimes over phi in (0, 2pi/3]:

    A   D < 0                no isotropic directions
    B   D = 0 (cos = -1/3)   one double line, slope sqrt(2); work always 0
    C   D > 0, c != 0        two lines y = k1 x, y = k2 x; cross work carries
                             the factor (1+3c)/c²
    D   c = 0 (phi = pi/2)   the axes x=0 and y=0 themselves; unit pairing

The half-circle equation f(w,w) = a² uses the same coefficients halved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import CaseMismatchError, OutOfRangeError
from .exprlang import Expr, compile_ast, parse, used_variables
from .quadrature import DEFAULT_TOL, BatchIntegrand, integrate

PHI_SUP = 2.0 * math.pi / 3.0
ARCCOS_THIRD = math.acos(-1.0 / 3.0)

# |cos phi| below this is the right-angle case D (the case-C coefficient
# (1+3c)/c² degenerates there); |D| below it is the double-root case B.
DEGENERACY_TOL = 1e-9
_COS_SNAP = 1e-15


class PlaneCase(Enum):
    A_NO_ISOTROPIC = "A"
    B_DOUBLE_ROOT = "B"
    C_TWO_DIRECTIONS = "C"
    D_RIGHT_ANGLE = "D"


@dataclass(frozen=True)
class IsoDirection:
    """A line through the origin: finite slope, or the vertical axis x=0."""

    slope: float | None

    @property
    def vertical(self) -> bool:
        return self.slope is None

    def label(self) -> str:
        if self.vertical:
            return "x=0"
        if self.slope == 0.0:
            return "y=0"
        return f"y={self.slope:.12g}x"


@dataclass(frozen=True)
class PlaneContext:
    phi: float
    c: float
    s: float
    f_ii: float
    f_ij: float
    f_jj: float
    case_tag: PlaneCase
    discriminant: float
    k1: float | None
    k2: float | None


@dataclass(frozen=True)
class CircleSpec:
    """f(w,w) = a² written out: coeff_xx x² + coeff_xy xy + coeff_yy y² = a²/2."""

    a: float
    coeff_xx: float
    coeff_xy: float
    coeff_yy: float
    rhs: float


@dataclass(frozen=True)
class PlaneWorkResult:
    value: float
    error_estimate: float
    case_tag: PlaneCase
    description: str


def _polish_root(a, b, c, k):
    # One Newton step on a k² + b k + c; the residual checks demand ~1e-12.
    for _ in range(2):
        f = (a * k + b) * k + c
        df = 2.0 * a * k + b
        if df == 0.0:
            return k
        k = k - f / df
    return k


def quadratic_discriminant(phi: float) -> float:
    """Discriminant of the slope quadratic computed from its coefficients,
    s²(1+2c)² + 4c³(1+c); equals (1+c)(1+3c) identically."""
    c = math.cos(phi)
    s = math.sin(phi)
    return s * s * (1.0 + 2.0 * c) ** 2 + 4.0 * c ** 3 * (1.0 + c)


def build_plane(phi: float) -> PlaneContext:
    """Classify the plane at angle phi and solve for the isotropic slopes."""
    if not (0.0 < phi <= PHI_SUP):
        raise OutOfRangeError(f"phi must lie in (0, 2*pi/3], got {phi}")
    c = math.cos(phi)
    if abs(c) < _COS_SNAP:
        c = 0.0
    s = math.sin(phi)
    f_ii = 2.0 * c
    f_ij = (1.0 - c) * (1.0 + 2.0 * c) / s
    f_jj = -2.0 * c * c / (1.0 + c)
    disc = (1.0 + c) * (1.0 + 3.0 * c)

    k1 = k2 = None
    if abs(c) <= DEGENERACY_TOL:
        case = PlaneCase.D_RIGHT_ANGLE
    elif abs(disc) <= DEGENERACY_TOL:
        case = PlaneCase.B_DOUBLE_ROOT
        k1 = k2 = s * (1.0 + 2.0 * c) / (2.0 * c * c)
    elif disc < 0.0:
        case = PlaneCase.A_NO_ISOTROPIC
    else:
        case = PlaneCase.C_TWO_DIRECTIONS
        qa = c * c
        qb = -s * (1.0 + 2.0 * c)
        qc = -(1.0 + c) * c
        root = math.sqrt(qb * qb - 4.0 * qa * qc)
        q = -0.5 * (qb + math.copysign(root, qb)) if qb != 0.0 else 0.5 * root
        r1 = _polish_root(qa, qb, qc, q / qa)
        r2 = _polish_root(qa, qb, qc, qc / q)
        k1, k2 = (r1, r2) if r1 <= r2 else (r2, r1)
    return PlaneContext(phi, c, s, f_ii, f_ij, f_jj, case, disc, k1, k2)


def circle_spec(ctx: PlaneContext, a: float) -> CircleSpec:
    if a < 0.0:
        raise ValueError("radius parameter a must be >= 0")
    return CircleSpec(a, 0.5 * ctx.f_ii, ctx.f_ij, 0.5 * ctx.f_jj, 0.5 * a * a)


def circle_residual(ctx: PlaneContext, a: float, x: float, y: float) -> float:
    """Residual of the f-circle equation at (x, y); zero iff on the circle."""
    spec = circle_spec(ctx, a)
    return (spec.coeff_xx * x * x + spec.coeff_xy * x * y
            + spec.coeff_yy * y * y - spec.rhs)


def f_pair(ctx: PlaneContext, w1: tuple[float, float], w2: tuple[float, float]
           ) -> float:
    """f(w1, w2) for plane vectors in (i, j) coordinates."""
    x1, y1 = w1
    x2, y2 = w2
    return (ctx.f_ii * x1 * x2 + ctx.f_jj * y1 * y2
            + ctx.f_ij * (x1 * y2 + y1 * x2))


def iso_directions(ctx: PlaneContext) -> list[IsoDirection]:
    """Isotropic lines of the plane: 0, 1 (double), 2, or the two axes."""
    if ctx.case_tag is PlaneCase.A_NO_ISOTROPIC:
        return []
    if ctx.case_tag is PlaneCase.B_DOUBLE_ROOT:
        return [IsoDirection(ctx.k1)]
    if ctx.case_tag is PlaneCase.D_RIGHT_ANGLE:
        return [IsoDirection(None), IsoDirection(0.0)]
    return [IsoDirection(ctx.k1), IsoDirection(ctx.k2)]


def _check_plane_expr(p: Expr):
    extra = used_variables(p) - {"x", "y"}
    if extra:
        raise ValueError(f"plane force expression may only use x, y; "
                         f"found {sorted(extra)}")


def _line_integral(p: Expr, slope: float, alpha: float, beta: float, tol: float):
    prog = compile_ast(p)

    def integrand(ts):
        return prog.eval(xs=ts, ys=slope * ts, n=ts.size)

    return integrate(BatchIntegrand(integrand), alpha, beta, tol)


def work_cross(ctx: PlaneContext, p, source: str, target: str,
               alpha: float, beta: float, tol: float = DEFAULT_TOL
               ) -> PlaneWorkResult:
    """Work of F = P·(direction of `source`) along the line `target`,
    both lines parameterized as (t, k t), t in [alpha, beta].

    Case C: zero when source == target, else ((1+3c)/c²)·∫ P(t, k_target t) dt.
    Case B has a single isotropic line, so the work is always zero.
    """
    p = _as_plane_expr(p)
    if source not in ("c1", "c2") or target not in ("c1", "c2"):
        raise ValueError("source and target must be 'c1' or 'c2'")
    if ctx.case_tag is PlaneCase.A_NO_ISOTROPIC:
        raise CaseMismatchError("no isotropic directions for this phi")
    if ctx.case_tag is PlaneCase.D_RIGHT_ANGLE:
        raise CaseMismatchError("phi = pi/2 is the right-angle case; "
                                "use work_right_angle")
    if ctx.case_tag is PlaneCase.B_DOUBLE_ROOT:
        return PlaneWorkResult(0.0, 0.0, ctx.case_tag,
                               "single isotropic line: work is zero")
    if source == target:
        return PlaneWorkResult(0.0, 0.0, ctx.case_tag,
                               "force along its own trajectory: work is zero")
    k_target = ctx.k1 if target == "c1" else ctx.k2
    coeff = (1.0 + 3.0 * ctx.c) / (ctx.c * ctx.c)
    q = _line_integral(p, k_target, alpha, beta, tol)
    return PlaneWorkResult(coeff * q.value, abs(coeff) * q.error_estimate,
                           ctx.case_tag,
                           f"((1+3c)/c²) ∫ P(t, {k_target:.12g}·t) dt")


def work_right_angle(p, force_axis: str, alpha: float, beta: float,
                     tol: float = DEFAULT_TOL) -> PlaneWorkResult:
    """phi = pi/2: the isotropic lines are the axes and f(i, Qi) = 1.

    force_axis 'c1' (F on x=0, trajectory y=0): A = ∫ P(t, 0) dt;
    force_axis 'c2' (F on y=0, trajectory x=0): A = ∫ P(0, t) dt.
    """
    p = _as_plane_expr(p)
    prog = compile_ast(p)
    if force_axis == "c1":
        integrand = BatchIntegrand(lambda ts: prog.eval(xs=ts, ys=0.0, n=ts.size))
        desc = "∫ P(t,0) dt"
    elif force_axis == "c2":
        integrand = BatchIntegrand(lambda ts: prog.eval(xs=0.0, ys=ts, n=ts.size))
        desc = "∫ P(0,t) dt"
    else:
        raise ValueError("force_axis must be 'c1' or 'c2'")
    q = integrate(integrand, alpha, beta, tol)
    return PlaneWorkResult(q.value, q.error_estimate, PlaneCase.D_RIGHT_ANGLE, desc)


def _as_plane_expr(p) -> Expr:
    e = parse(p) if isinstance(p, str) else p
    _check_plane_expr(e)
    return e


@dataclass(frozen=True)
class TableRow:
    regime: str
    phi: float | None
    acts_on: str
    trajectory: str
    formula: str
    value: float | None


def table1_report(p, alpha: float, beta: float, tol: float = DEFAULT_TOL,
                  phi_two_lines: float = math.pi / 3.0) -> list[TableRow]:
    """The eight-row work table over the phi regimes, with the cross rows
    evaluated at a representative two-line angle (default pi/3).

    Rows follow the published layout: the cross rows pair "acts on c1" with
    the integrand slope k1 (and c2 with k2), and the right-angle rows keep
    their own axis labels.
    """
    p = _as_plane_expr(p)
    ctx = build_plane(phi_two_lines)
    if ctx.case_tag is not PlaneCase.C_TWO_DIRECTIONS:
        raise ValueError("phi_two_lines must fall in the two-line regime")
    k1l = f"c1: y={ctx.k1:.6g}x"
    k2l = f"c2: y={ctx.k2:.6g}x"
    regime_c = "phi in (0,pi/2)U(pi/2,arccos(-1/3))"
    cross1 = work_cross(ctx, p, "c2", "c1", alpha, beta, tol)
    cross2 = work_cross(ctx, p, "c1", "c2", alpha, beta, tol)
    ra1 = work_right_angle(p, "c1", alpha, beta, tol)
    ra2 = work_right_angle(p, "c2", alpha, beta, tol)
    return [
        TableRow("phi in (arccos(-1/3), 2pi/3)", None, "-", "no is. curves",
                 "-", None),
        TableRow("phi = arccos(-1/3)", ARCCOS_THIRD, "c: y=sqrt(2)x",
                 "c: y=sqrt(2)x", "0", 0.0),
        TableRow(regime_c, phi_two_lines, k1l, k1l, "0", 0.0),
        TableRow(regime_c, phi_two_lines, k2l, k2l, "0", 0.0),
        TableRow(regime_c, phi_two_lines, k1l, k2l,
                 "((1+3cos)/cos²) ∫ P(t,k1·t) dt", cross1.value),
        TableRow(regime_c, phi_two_lines, k2l, k1l,
                 "((1+3cos)/cos²) ∫ P(t,k2·t) dt", cross2.value),
        TableRow("phi = pi/2", 0.5 * math.pi, "c1: x=0", "c2: y=0",
                 "∫ P(t,0) dt", ra1.value),
        TableRow("phi = pi/2", 0.5 * math.pi, "c1: y=0", "c2: x=0",
                 "∫ P(0,t) dt", ra2.value),
    ]
