"""Force fields and parametric curves in one tangent space (orthonormal frame).

A force field is three scalar expressions P, R, S over (x, y, z); a curve is
three expressions over t on [alpha, beta].  Isotropy in the orthonormal
Q-basis reads

    field:  P R + R S + S P = 0          (pointwise)
    curve:  x'y' + y'z' + x'z' = 0       (tangents everywhere)

Partially specified isotropic data can be completed exactly:

    S  = -P R / (P + R)            (as a composed expression)
    z' = -x' y' / (x' + y')        (z recovered by quadrature)

Everything here samples and evaluates through the compiled tape kernels;
tangents come from dual numbers, so the only numerical error source in the
downstream work integrals is the quadrature itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegenerateTangentError
from .exprlang import (
    Bin,
    Expr,
    Neg,
    Num,
    compile_ast,
    parse,
    substitute,
    used_variables,
)
from .quadrature import _NODES, _WEIGHTS

# Scale-aware threshold below which x'+y' (resp. P+R) counts as zero.
DEGENERATE_TOL = 1e-12
# Largest normalized 2x2 minor tolerated for a collinear verdict.
COLLINEAR_TOL = 1e-9
# Default number of Chebyshev sample points for the classifiers.
N_SAMPLES = 64


class CurveState(NamedTuple):
    """Positions and tangents of a curve at a batch of parameter values."""

    xs: np.ndarray
    ys: np.ndarray
    zs: np.ndarray
    dxs: np.ndarray
    dys: np.ndarray
    dzs: np.ndarray


def chebyshev_points(alpha: float, beta: float, n: int) -> np.ndarray:
    """n Chebyshev-distributed interior points of [alpha, beta]."""
    j = np.arange(n)
    return 0.5 * (alpha + beta) + 0.5 * (beta - alpha) * np.cos(
        (2.0 * j + 1.0) * np.pi / (2.0 * n))


def _as_expr(e) -> Expr:
    return parse(e) if isinstance(e, str) else e


def _check_vars(e: Expr, allowed: set[str], what: str):
    extra = used_variables(e) - allowed
    if extra:
        raise ValueError(f"{what} may only use variables {sorted(allowed)}; "
                         f"found {sorted(extra)}")


@dataclass(frozen=True)
class ForceField:
    """Vector force field with components P, R, S over (x, y, z)."""

    p: Expr
    r: Expr
    s: Expr

    def __post_init__(self):
        for e, nm in ((self.p, "P"), (self.r, "R"), (self.s, "S")):
            _check_vars(e, {"x", "y", "z"}, f"force component {nm}")

    @classmethod
    def from_text(cls, p: str, r: str, s: str) -> "ForceField":
        return cls(parse(p), parse(r), parse(s))

    def components(self, xs, ys, zs):
        """Component values (P, R, S) over a batch of points."""
        return (compile_ast(self.p).eval(xs=xs, ys=ys, zs=zs),
                compile_ast(self.r).eval(xs=xs, ys=ys, zs=zs),
                compile_ast(self.s).eval(xs=xs, ys=ys, zs=zs))

    def scaled(self, a: float) -> "ForceField":
        return ForceField(Bin("*", Num(a), self.p),
                          Bin("*", Num(a), self.r),
                          Bin("*", Num(a), self.s))


@dataclass(frozen=True)
class ParamCurve:
    """Curve r(t) = (x(t), y(t), z(t)) on [alpha, beta]."""

    x: Expr
    y: Expr
    z: Expr
    alpha: float
    beta: float

    def __post_init__(self):
        if not self.alpha < self.beta:
            raise ValueError(f"need alpha < beta, got [{self.alpha}, {self.beta}]")
        for e, nm in ((self.x, "x"), (self.y, "y"), (self.z, "z")):
            _check_vars(e, {"t"}, f"curve coordinate {nm}")

    @classmethod
    def from_text(cls, x: str, y: str, z: str, alpha: float, beta: float) -> "ParamCurve":
        return cls(parse(x), parse(y), parse(z), alpha, beta)

    def state(self, ts) -> CurveState:
        ts = np.atleast_1d(np.asarray(ts, dtype=np.float64))
        xs, dxs = compile_ast(self.x).eval_dual(ts=ts, dts=1.0)
        ys, dys = compile_ast(self.y).eval_dual(ts=ts, dts=1.0)
        zs, dzs = compile_ast(self.z).eval_dual(ts=ts, dts=1.0)
        return CurveState(xs, ys, zs, dxs, dys, dzs)

    def reversed(self) -> "ParamCurve":
        """Same trace, opposite orientation: t -> alpha + beta - t."""
        swap = Bin("-", Num(self.alpha + self.beta), parse("t"))
        return ParamCurve(substitute(self.x, "t", swap),
                          substitute(self.y, "t", swap),
                          substitute(self.z, "t", swap),
                          self.alpha, self.beta)


class CompletedCurve:
    """Isotropic curve with x, y given and z integrated from
    z' = -x'y'/(x'+y'), z(alpha) = z0.

    z is tabulated cumulatively on a uniform knot grid at construction (one
    15-node Gauss panel per segment) and evaluated at arbitrary t by a single
    panel from the nearest knot at or below t; segments are short and the
    integrand smooth, so the panel error is at machine precision.
    """

    def __init__(self, x, y, z0: float, alpha: float, beta: float, n_grid: int = 64):
        if not alpha < beta:
            raise ValueError(f"need alpha < beta, got [{alpha}, {beta}]")
        self.x = _as_expr(x)
        self.y = _as_expr(y)
        _check_vars(self.x, {"t"}, "curve coordinate x")
        _check_vars(self.y, {"t"}, "curve coordinate y")
        self.z0 = float(z0)
        self.alpha = float(alpha)
        self.beta = float(beta)
        knots = np.linspace(alpha, beta, n_grid + 1)
        mids = 0.5 * (knots[:-1] + knots[1:])
        half = 0.5 * (knots[1] - knots[0])
        nodes = (mids[:, None] + half * _NODES[None, :]).ravel()
        zp = self._z_tangent(np.concatenate([nodes, knots]))
        seg = half * (zp[: nodes.size].reshape(n_grid, -1) @ _WEIGHTS)
        self._knots = knots
        self._knot_z = self.z0 + np.concatenate([[0.0], np.cumsum(seg)])

    def _z_tangent(self, ts: np.ndarray) -> np.ndarray:
        _, dxs = compile_ast(self.x).eval_dual(ts=ts, dts=1.0)
        _, dys = compile_ast(self.y).eval_dual(ts=ts, dts=1.0)
        return _completed_dz(ts, dxs, dys)

    def z_values(self, ts: np.ndarray) -> np.ndarray:
        ts = np.atleast_1d(np.asarray(ts, dtype=np.float64))
        k = np.clip(np.searchsorted(self._knots, ts, side="right") - 1,
                    0, self._knots.size - 2)
        g = self._knots[k]
        half = 0.5 * (ts - g)
        mid = 0.5 * (ts + g)
        nodes = (mid[:, None] + half[:, None] * _NODES[None, :]).ravel()
        zp = self._z_tangent(nodes).reshape(ts.size, -1)
        return self._knot_z[k] + half * (zp @ _WEIGHTS)

    def state(self, ts) -> CurveState:
        ts = np.atleast_1d(np.asarray(ts, dtype=np.float64))
        xs, dxs = compile_ast(self.x).eval_dual(ts=ts, dts=1.0)
        ys, dys = compile_ast(self.y).eval_dual(ts=ts, dts=1.0)
        zs = self.z_values(ts)
        dzs = _completed_dz(ts, dxs, dys)
        return CurveState(xs, ys, zs, dxs, dys, dzs)


def _completed_dz(ts, dxs, dys):
    den = dxs + dys
    bad = np.abs(den) < DEGENERATE_TOL * np.maximum(
        1.0, np.maximum(np.abs(dxs), np.abs(dys)))
    if bad.any():
        raise DegenerateTangentError(
            f"x'+y' vanishes near t = {ts[int(np.argmax(bad))]!r}")
    return -dxs * dys / den


def curve_isotropy_residual(c, t0: float) -> float:
    """x'y' + y'z' + x'z' at t0 (zero iff the tangent is isotropic there)."""
    st = c.state(np.array([float(t0)]))
    return float(st.dxs[0] * st.dys[0] + st.dys[0] * st.dzs[0]
                 + st.dxs[0] * st.dzs[0])


def force_isotropy_residual(field: ForceField, pt) -> float:
    """P R + R S + S P at the point pt = (x, y, z)."""
    x, y, z = (float(v) for v in pt)
    ps, rs, ss = field.components(x, y, z)
    return float(ps[0] * rs[0] + rs[0] * ss[0] + ss[0] * ps[0])


def complete_isotropic_force(p, r) -> ForceField:
    """Force field with S = -PR/(P+R) composed symbolically; the isotropy
    residual vanishes identically wherever P + R != 0."""
    p = _as_expr(p)
    r = _as_expr(r)
    s = Neg(Bin("/", Bin("*", p, r), Bin("+", p, r)))
    return ForceField(p, r, s)


def complete_isotropic_curve(x, y, z0: float, alpha: float, beta: float,
                             n_grid: int = 64) -> CompletedCurve:
    """Isotropic curve through z(alpha) = z0 with z' = -x'y'/(x'+y')."""
    return CompletedCurve(x, y, z0, alpha, beta, n_grid)


@dataclass(frozen=True)
class CollinearityReport:
    collinear: bool
    max_minor: float
    k_samples: np.ndarray


class SampledPair(NamedTuple):
    """Classifier inputs for a (field, curve) pair over one sample batch."""

    ts: np.ndarray
    state: CurveState
    ps: np.ndarray
    rs: np.ndarray
    ss: np.ndarray
    curve_residual: float   # max scale-normalized |x'y' + y'z' + x'z'|
    force_residual: float   # max scale-normalized |PR + RS + SP|
    max_minor: float        # max scale-normalized 2x2 minor of (F, r')
    dxdy_residual: float    # max scale-normalized |x' + y'|
    pr_residual: float      # max scale-normalized |P + R|
    k_samples: np.ndarray


def sample_pair(field: ForceField, c, n_samples: int = N_SAMPLES) -> SampledPair:
    """Evaluate every classifier quantity at Chebyshev samples of the curve."""
    if n_samples < 2:
        raise ValueError("need at least 2 samples")
    ts = chebyshev_points(c.alpha, c.beta, n_samples)
    st = c.state(ts)
    ps, rs, ss = field.components(st.xs, st.ys, st.zs)

    d2 = st.dxs ** 2 + st.dys ** 2 + st.dzs ** 2
    f2 = ps ** 2 + rs ** 2 + ss ** 2
    curve_res = np.abs(st.dxs * st.dys + st.dys * st.dzs + st.dxs * st.dzs)
    force_res = np.abs(ps * rs + rs * ss + ss * ps)

    fnorm = np.sqrt(f2)
    dnorm = np.sqrt(d2)
    scale = np.maximum(fnorm, 1.0) * np.maximum(dnorm, 1.0)
    minors = np.maximum.reduce([
        np.abs(ps * st.dys - rs * st.dxs),
        np.abs(rs * st.dzs - ss * st.dys),
        np.abs(ps * st.dzs - ss * st.dxs),
    ]) / scale

    dot = ps * st.dxs + rs * st.dys + ss * st.dzs
    with np.errstate(invalid="ignore", divide="ignore"):
        k = np.where(d2 > 1e-300, dot / d2, np.nan)

    return SampledPair(
        ts, st, ps, rs, ss,
        float(np.max(curve_res / np.maximum(1.0, d2))),
        float(np.max(force_res / np.maximum(1.0, f2))),
        float(np.max(minors)),
        float(np.max(np.abs(st.dxs + st.dys)
                     / np.maximum(1.0, np.maximum(np.abs(st.dxs), np.abs(st.dys))))),
        float(np.max(np.abs(ps + rs)
                     / np.maximum(1.0, np.maximum(np.abs(ps), np.abs(rs))))),
        k,
    )


def collinearity_check(field: ForceField, c, n_samples: int = N_SAMPLES
                       ) -> CollinearityReport:
    """Are F(c(t)) and r'(t) proportional along the curve?

    The verdict requires all three scale-normalized 2x2 minors to vanish at
    every sample; k may vary with t, so no constancy is demanded of the
    reported ratio samples.
    """
    sp = sample_pair(field, c, n_samples)
    return CollinearityReport(sp.max_minor <= COLLINEAR_TOL, sp.max_minor,
                              sp.k_samples)
