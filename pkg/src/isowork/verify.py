"""Named verification suite: every module invariant and acceptance property.

Each check is a zero-argument callable that raises CheckFailure with a
diagnostic on violation and returns a one-line detail string on success.
`run_all` times them and prints PASS/FAIL lines; the CLI `verify` command
and the acceptance tests both drive this module, with fixed RNG seeds so
results are reproducible.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import algebra, plane2, work3d
from .errors import CheckFailure, DomainError
from .exprlang import (
    Bin,
    Call,
    DualValue,
    Neg,
    Num,
    Var,
    eval_dual,
    evaluate,
    parse,
    pretty_print,
)
from .fields_curves import (
    ForceField,
    ParamCurve,
    collinearity_check,
    complete_isotropic_curve,
    complete_isotropic_force,
    curve_isotropy_residual,
    force_isotropy_residual,
    sample_pair,
)
from .plane2 import ARCCOS_THIRD, PlaneCase, build_plane, f_pair, table1_report
from .quadrature import BatchIntegrand, integrate
from .work3d import WorkMethod, classify_case, diagnose, work, work_direct


def _fail(msg):
    raise CheckFailure(msg)


def _require(cond, msg):
    if not cond:
        _fail(msg)


# ---------------------------------------------------------------------------
# randomized instance generators (shared with the test suite)

def make_collinear_pair(rng):
    """Random collinear isotropic (F, c): direction (u, v, q) on the cone,
    curve r(t) = (u,v,q)·g(t), field F = (u,v,q)·K(x)."""
    while True:
        u = rng.uniform(-2.0, 2.0)
        v = rng.uniform(-2.0, 2.0)
        if abs(u + v) >= 0.3:
            break
    q = -u * v / (u + v)
    a1 = rng.uniform(-0.3, 0.3)
    a2 = rng.uniform(0.5, 1.5)
    a3 = rng.uniform(-0.2, 0.2)
    g = f"(t + {a1!r}*sin({a2!r}*t) + {a3!r}*t^2)"
    b0 = rng.uniform(0.7, 1.5)
    b1 = rng.uniform(-0.5, 0.5)
    k = f"({b0!r} + {b1!r}*sin(x))"
    field = ForceField.from_text(f"{u!r}*{k}", f"{v!r}*{k}", f"{q!r}*{k}")
    curve = ParamCurve.from_text(f"{u!r}*{g}", f"{v!r}*{g}", f"{q!r}*{g}",
                                 0.0, 1.0)
    return field, curve


def _random_pr(rng):
    p0 = rng.uniform(1.1, 1.6)
    p1 = rng.uniform(-0.25, 0.25)
    p2 = rng.uniform(-0.25, 0.25)
    p3 = rng.uniform(-0.15, 0.15)
    p = f"{p0!r} + {p1!r}*sin(x) + {p2!r}*cos(y) + {p3!r}*sin(z)"
    r0 = rng.uniform(1.1, 1.6)
    r1 = rng.uniform(-0.25, 0.25)
    r2 = rng.uniform(-0.25, 0.25)
    r3 = rng.uniform(-0.15, 0.15)
    r = f"{r0!r} + {r1!r}*cos(x) + {r2!r}*sin(y) + {r3!r}*cos(z)"
    return p, r


def _random_xy_curve(rng):
    c1 = rng.uniform(-0.2, 0.2)
    c2 = rng.uniform(0.8, 1.6)
    c3 = rng.uniform(-0.2, 0.2)
    d0 = rng.uniform(0.6, 1.4)
    x = f"t + {c1!r}*sin({c2!r}*t)"
    y = f"{d0!r}*t + {c3!r}*cos({c2!r}*t) - {c3!r}"
    return x, y


def make_case_iv_instance(rng):
    """Random Case-IV pair built through both isotropic completions."""
    p, r = _random_pr(rng)
    field = complete_isotropic_force(parse(p), parse(r))
    x, y = _random_xy_curve(rng)
    curve = complete_isotropic_curve(parse(x), parse(y),
                                     rng.uniform(-1.0, 1.0), 0.0, 1.0,
                                     n_grid=48)
    return field, curve


def make_case_ii_instance(rng):
    p, r = _random_pr(rng)
    field = complete_isotropic_force(parse(p), parse(r))
    k1 = rng.uniform(-1.5, 1.5)
    k2 = rng.uniform(-1.5, 1.5)
    e1 = rng.uniform(-0.25, 0.25)
    e2 = rng.uniform(0.8, 1.6)
    curve = ParamCurve.from_text(repr(k1), repr(k2),
                                 f"t + {e1!r}*sin({e2!r}*t)", 0.0, 1.0)
    return field, curve


def make_case_iii_instance(rng):
    s0 = rng.uniform(0.5, 1.2)
    s1 = rng.uniform(-0.5, 0.5)
    s2 = rng.uniform(-0.3, 0.3)
    field = ForceField.from_text("0", "0",
                                 f"{s0!r} + {s1!r}*sin(x+y) + {s2!r}*z")
    x, y = _random_xy_curve(rng)
    curve = complete_isotropic_curve(parse(x), parse(y),
                                     rng.uniform(-1.0, 1.0), 0.0, 1.0,
                                     n_grid=48)
    return field, curve


def fixed_case_iv_pair():
    """The worked instance with exact value 1/6."""
    field = ForceField.from_text("1", "1", "-1/2")
    curve = ParamCurve.from_text("t", "2*t", "-2*t/3", 0.0, 1.0)
    return field, curve


_FN_NAMES = ("sin", "cos", "tan", "exp", "log", "sqrt", "abs")


def random_expr(rng, depth, variables=("x", "y", "z", "t")):
    """Random AST of the full grammar (for round-trip style checks)."""
    if depth <= 0 or rng.random() < 0.25:
        if rng.random() < 0.5:
            return Num(float(np.round(rng.uniform(0.0, 10.0), 4)))
        return Var(str(rng.choice(variables)))
    kind = rng.random()
    if kind < 0.15:
        return Neg(random_expr(rng, depth - 1, variables))
    if kind < 0.40:
        return Call(str(rng.choice(_FN_NAMES)),
                    random_expr(rng, depth - 1, variables))
    op = str(rng.choice(["+", "-", "*", "/", "^"]))
    return Bin(op, random_expr(rng, depth - 1, variables),
               random_expr(rng, depth - 1, variables))


# ---------------------------------------------------------------------------
# algebra

def check_q_cycle(rng=None):
    rng = rng or np.random.default_rng(101)
    for _ in range(200):
        r = algebra.Vec3Q(*rng.uniform(-5, 5, 3))
        r3 = algebra.apply_q(algebra.apply_q(algebra.apply_q(r)))
        _require(r3 == r, f"Q^3 != id on {r}")
    _require(algebra.apply_q(algebra.Vec3Q(1, 0, 0)) == algebra.Vec3Q(0, 1, 0),
             "Q(i) != Qi")
    return "Q^3 = id exactly on 200 random vectors"


def check_g_isometry(rng=None):
    rng = rng or np.random.default_rng(102)
    worst = 0.0
    for phi in np.linspace(0.1, algebra.PHI_MAX - 0.1, 17):
        frame = algebra.QFrame(float(phi))
        for _ in range(20):
            r = algebra.Vec3Q(*rng.uniform(-3, 3, 3))
            w = algebra.Vec3Q(*rng.uniform(-3, 3, 3))
            lhs = algebra.g_inner(frame, algebra.apply_q(r), algebra.apply_q(w))
            rhs = algebra.g_inner(frame, r, w)
            rel = abs(lhs - rhs) / max(1.0, abs(rhs))
            worst = max(worst, rel)
            _require(rel <= 1e-14, f"g(Qr,Qw) != g(r,w): rel {rel:.2e} at phi={phi}")
    return f"g(Qr,Qw) = g(r,w), worst rel dev {worst:.1e}"


def check_f_symmetry_isometry(rng=None):
    rng = rng or np.random.default_rng(103)
    for phi in np.linspace(0.1, algebra.PHI_MAX - 0.1, 17):
        frame = algebra.QFrame(float(phi))
        for _ in range(20):
            r = algebra.Vec3Q(*rng.uniform(-3, 3, 3))
            w = algebra.Vec3Q(*rng.uniform(-3, 3, 3))
            _require(algebra.f_inner(frame, r, w) == algebra.f_inner(frame, w, r),
                     "f(r,w) != f(w,r) exactly")
            lhs = algebra.f_inner(frame, algebra.apply_q(r), algebra.apply_q(w))
            rhs = algebra.f_inner(frame, r, w)
            _require(abs(lhs - rhs) <= 1e-14 * max(1.0, abs(rhs)),
                     f"f(Qr,Qw) != f(r,w) at phi={phi}")
    return "f symmetric exactly, Q-invariant to 1e-14"


def check_f_orthonormal_matrix(rng=None):
    rng = rng or np.random.default_rng(104)
    frame = algebra.orthonormal_frame()
    target = np.array([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
    _require(np.array_equal(frame.mat_f, target),
             f"mat_f at pi/2 is not circulant(0,1,1) exactly:\n{frame.mat_f}")
    worst = 0.0
    for _ in range(100):
        r = algebra.Vec3Q(*rng.uniform(-3, 3, 3))
        fn = algebra.f_inner(frame, r, r)
        res = 2.0 * algebra.isotropy_residual_orthonormal(r)
        dev = abs(fn - res) / max(1.0, abs(res))
        worst = max(worst, dev)
        _require(dev <= 1e-14, f"f(r,r) != 2(uv+vq+qu): dev {dev:.2e}")
    return f"mat_f exact at pi/2; f(r,r)=2(uv+vq+qu) worst dev {worst:.1e}"


def check_metric_signature():
    for phi in np.linspace(0.05, algebra.PHI_MAX - 0.01, 200):
        frame = algebra.QFrame(float(phi))
        ew_f = np.linalg.eigvalsh(frame.mat_f)
        _require(ew_f[0] < 0.0 < ew_f[-1],
                 f"mat_f not indefinite at phi={phi}: {ew_f}")
        ew_g = np.linalg.eigvalsh(frame.gram_g)
        _require(ew_g[0] > 0.0, f"gram_g not positive definite at phi={phi}")
    return "f indefinite and g positive definite across the phi grid"


def check_mat_f_shift_identity():
    sigma = [1, 2, 0]  # Q e_a = e_{sigma(a)}
    for phi in np.linspace(0.1, algebra.PHI_MAX - 0.1, 25):
        frame = algebra.QFrame(float(phi))
        g = frame.gram_g
        f = frame.mat_f
        for a in range(3):
            for b in range(3):
                expect = g[a][sigma[b]] + g[sigma[a]][b]
                _require(abs(f[a][b] - expect) <= 1e-15,
                         f"mat_f[{a}][{b}] mismatch at phi={phi}")
    return "mat_f[a][b] = gram[a][s(b)] + gram[s(a)][b] on the phi grid"


# ---------------------------------------------------------------------------
# exprlang

def check_expr_roundtrip(rng=None):
    rng = rng or np.random.default_rng(105)
    for _ in range(300):
        e = random_expr(rng, int(rng.integers(0, 9)))
        text = pretty_print(e)
        _require(parse(text) == e, f"round-trip failed for {text!r}")
    return "parse(pretty_print(e)) = e on 300 random ASTs (depth <= 8)"


def check_expr_determinism(rng=None):
    rng = rng or np.random.default_rng(106)
    env = {"x": 0.7, "y": -1.2, "z": 2.3, "t": 0.4}
    denv = {k: DualValue(v, rng.uniform(-1, 1)) for k, v in env.items()}
    exprs = [parse(s) for s in
             ("x + y*z", "sin(t)*exp(x/4) - z^2", "sqrt(abs(y)) + t^3",
              "(x+1)/(z+4) + cos(y)")]
    for e in exprs:
        a = evaluate(e, env)
        b = evaluate(e, env)
        _require(a == b, "evaluate not bit-deterministic")
        da = eval_dual(e, denv)
        db = eval_dual(e, denv)
        _require(da == db, "eval_dual not bit-deterministic")
    return "repeated evaluation is bit-identical"


def _random_smooth_t_expr(rng):
    return random_expr(rng, int(rng.integers(1, 7)), variables=("t",))


def check_autodiff_vs_fd(rng=None, n_pairs=500):
    rng = rng or np.random.default_rng(107)
    accepted = 0
    tried = 0
    worst = 0.0
    while accepted < n_pairs:
        tried += 1
        _require(tried < 60 * n_pairs, "generator failed to produce samples")
        e = _random_smooth_t_expr(rng)
        t0 = float(rng.uniform(-2.0, 2.0))
        h = 1e-6 * max(1.0, abs(t0))
        try:
            vals = [evaluate(e, {"t": t0 + d})
                    for d in (-h, h, -0.5 * h, 0.5 * h)]
            ad = eval_dual(e, {"t": DualValue(t0, 1.0)}).deriv
        except (DomainError, OverflowError):
            continue
        if not all(math.isfinite(v) for v in vals) or not math.isfinite(ad):
            continue
        if max(abs(v) for v in vals) > 1e6 or abs(ad) > 1e6:
            continue
        fd1 = (vals[1] - vals[0]) / (2.0 * h)
        fd2 = (vals[3] - vals[2]) / h
        # keep only points where FD itself is stable (away from boundaries)
        if abs(fd1 - fd2) > 1e-7 * max(1.0, abs(fd2)):
            continue
        accepted += 1
        rel = abs(ad - fd2) / max(1.0, abs(ad), abs(fd2))
        worst = max(worst, rel)
        _require(rel <= 1e-6,
                 f"dual deriv {ad!r} vs FD {fd2!r} (rel {rel:.2e}) "
                 f"for {pretty_print(e)!r} at t={t0!r}")
    return f"{n_pairs} AD/FD pairs agree to 1e-6 (worst {worst:.1e})"


# ---------------------------------------------------------------------------
# quadrature

def check_quad_polynomial_exactness():
    for k in range(30):
        res = integrate(lambda t, k=k: t ** k, 0.0, 1.0, tol=1e-12)
        exact = 1.0 / (k + 1)
        _require(abs(res.value - exact) <= 1e-15,
                 f"degree {k}: |{res.value!r} - {exact!r}| > 1e-15")
        _require(res.nodes_used == 45,
                 f"degree {k} refined beyond the first level ({res.nodes_used})")
    res = integrate(lambda t: t, 0.0, 1.0, tol=1e-12)
    _require(abs(res.value - 0.5) <= 1e-15, "t on [0,1] != 0.5")
    return "degrees 0..29 exact to 1e-15 with no refinement"


def check_quad_linearity():
    a, b = 2.3, -1.1
    f = BatchIntegrand(np.sin)
    g = BatchIntegrand(np.exp)
    fg = BatchIntegrand(lambda ts: a * np.sin(ts) + b * np.exp(ts))
    rf = integrate(f, 0.0, 1.0)
    rg = integrate(g, 0.0, 1.0)
    rfg = integrate(fg, 0.0, 1.0)
    lhs = rfg.value
    rhs = a * rf.value + b * rg.value
    allowed = 2.0 * (rfg.error_estimate + abs(a) * rf.error_estimate
                     + abs(b) * rg.error_estimate)
    _require(abs(lhs - rhs) <= allowed,
             f"linearity violated: {lhs!r} vs {rhs!r}")
    return "integrate(a f + b g) = a I(f) + b I(g) within 2x estimates"


def check_quad_additivity():
    f = BatchIntegrand(lambda ts: np.cos(3.0 * ts) * np.exp(-ts))
    whole = integrate(f, 0.0, 1.0)
    left = integrate(f, 0.0, 0.37)
    right = integrate(f, 0.37, 1.0)
    allowed = (whole.error_estimate + left.error_estimate
               + right.error_estimate)
    _require(abs(whole.value - left.value - right.value) <= allowed,
             "interval additivity violated")
    return "[a,b] = [a,m] + [m,b] within combined estimates"


# ---------------------------------------------------------------------------
# fields & curves

def check_completed_curve_isotropy(rng=None):
    rng = rng or np.random.default_rng(108)
    worst = 0.0
    for _ in range(20):
        x, y = _random_xy_curve(rng)
        curve = complete_isotropic_curve(parse(x), parse(y),
                                         rng.uniform(-1, 1), 0.0, 1.0)
        ts = np.linspace(0.0, 1.0, 97)
        st = curve.state(ts)
        res = np.abs(st.dxs * st.dys + st.dys * st.dzs + st.dxs * st.dzs)
        scale = np.maximum(1.0, st.dxs ** 2 + st.dys ** 2 + st.dzs ** 2)
        dev = float(np.max(res / scale))
        worst = max(worst, dev)
        _require(dev <= 1e-10, f"completed curve residual {dev:.2e}")
    return f"z' completion keeps curves isotropic (worst {worst:.1e})"


def check_completed_force_identity(rng=None):
    rng = rng or np.random.default_rng(109)
    worst = 0.0
    for _ in range(5):
        p, r = _random_pr(rng)
        field = complete_isotropic_force(parse(p), parse(r))
        count = 0
        while count < 100:
            pt = rng.uniform(-3, 3, 3)
            ps, rs, _ = field.components(pt[0], pt[1], pt[2])
            if abs(float(ps[0] + rs[0])) <= 0.1:
                continue
            count += 1
            res = force_isotropy_residual(field, pt)
            scale = max(1.0, float(ps[0] ** 2 + rs[0] ** 2))
            dev = abs(res) / scale
            worst = max(worst, dev)
            _require(dev <= 1e-12, f"completed force residual {dev:.2e} at {pt}")
    return f"S = -PR/(P+R) zeroes the residual (worst {worst:.1e})"


def check_collinearity_scaling(rng=None):
    rng = rng or np.random.default_rng(110)
    for _ in range(10):
        field, curve = make_collinear_pair(rng)
        base = collinearity_check(field, curve)
        scal = collinearity_check(field.scaled(3.7), curve)
        _require(base.collinear and scal.collinear,
                 "collinear verdict changed under positive rescaling")
    field, curve = fixed_case_iv_pair()
    _require(not collinearity_check(field, curve).collinear,
             "non-collinear pair misreported")
    _require(not collinearity_check(field.scaled(3.7), curve).collinear,
             "non-collinear verdict changed under rescaling")
    return "verdict invariant under positive constant rescaling of F"


def check_branch_classifier(rng=None):
    rng = rng or np.random.default_rng(111)
    for make, expect in ((make_case_ii_instance, WorkMethod.CASE_II_DXDY_ZERO),
                         (make_case_iii_instance, WorkMethod.CASE_III_PR_ZERO),
                         (make_case_iv_instance, WorkMethod.CASE_IV_GENERAL)):
        for _ in range(10):
            field, curve = make(rng)
            diag = diagnose(field, curve)
            _require(diag.isotropic, f"{expect}: instance not isotropic")
            _require(diag.tag is expect,
                     f"expected {expect}, classified {diag.tag}")
            branches = ((diag.dxdy_residual <= work3d.ZERO_TOL),
                        (diag.pr_residual <= work3d.ZERO_TOL))
            want = {WorkMethod.CASE_II_DXDY_ZERO: (True, False),
                    WorkMethod.CASE_III_PR_ZERO: (False, True),
                    WorkMethod.CASE_IV_GENERAL: (False, False)}[expect]
            _require(branches == want,
                     f"branch booleans {branches} for {expect}")
    return "II/III/IV branch conditions detected exactly once each"


# ---------------------------------------------------------------------------
# work in 3-space

def check_collinear_work_zero(rng=None, n_pairs=200):
    rng = rng or np.random.default_rng(112)
    worst = 0.0
    for _ in range(n_pairs):
        field, curve = make_collinear_pair(rng)
        res = work(field, curve)
        _require(res.method is WorkMethod.CASE_I_COLLINEAR,
                 f"collinear pair classified {res.method}")
        _require(res.value == 0.0, "dispatcher returned nonzero for Case I")
        direct = work_direct(field, curve)
        sp = sample_pair(field, curve)
        fmax = float(np.max(np.sqrt(sp.ps ** 2 + sp.rs ** 2 + sp.ss ** 2)))
        dmax = float(np.max(np.sqrt(sp.state.dxs ** 2 + sp.state.dys ** 2
                                    + sp.state.dzs ** 2)))
        scale = max(1.0, fmax * dmax * (curve.beta - curve.alpha))
        dev = abs(direct.value) / scale
        worst = max(worst, dev)
        _require(dev <= 1e-9, f"direct quadrature {direct.value!r} not ~0")
    return f"{n_pairs} collinear pairs: dispatch 0, direct <= {worst:.1e}"


def check_oracle_equivalence(rng=None, n_case_iv=100):
    rng = rng or np.random.default_rng(113)
    field, curve = fixed_case_iv_pair()
    res = work(field, curve)
    _require(res.method is WorkMethod.CASE_IV_GENERAL,
             f"fixed instance classified {res.method}")
    _require(abs(res.value - 1.0 / 6.0) <= 1e-10,
             f"fixed instance value {res.value!r} != 1/6")
    worst = 0.0
    for make, n, tag in ((make_case_iv_instance, n_case_iv,
                          WorkMethod.CASE_IV_GENERAL),
                         (make_case_ii_instance, 25,
                          WorkMethod.CASE_II_DXDY_ZERO),
                         (make_case_iii_instance, 25,
                          WorkMethod.CASE_III_PR_ZERO)):
        for _ in range(n):
            f2, c2 = make(rng)
            r2 = work(f2, c2)  # raises CrossCheckFailure on disagreement
            _require(r2.method is tag, f"expected {tag}, got {r2.method}")
            worst = max(worst, r2.cross_check_delta or 0.0)
    return (f"case formulas match direct quadrature "
            f"(fixed 1/6 ok, worst delta {worst:.1e})")


def check_work_linearity(rng=None):
    rng = rng or np.random.default_rng(114)
    field, curve = fixed_case_iv_pair()
    base = work(field, curve)
    for a in (0.5, 2.0, -1.3):
        scaled = work(field.scaled(a), curve)
        dev = abs(scaled.value - a * base.value)
        allowed = (1e-9 * max(1.0, abs(a * base.value))
                   + 10.0 * (scaled.error_estimate
                             + abs(a) * base.error_estimate))
        _require(dev <= allowed, f"linearity broken at a={a}: dev {dev:.2e}")
    for _ in range(5):
        f2, c2 = make_case_iii_instance(rng)
        b2 = work(f2, c2)
        s2 = work(f2.scaled(1.7), c2)
        dev = abs(s2.value - 1.7 * b2.value)
        _require(dev <= 1e-9 * max(1.0, abs(s2.value))
                 + 10.0 * (s2.error_estimate + 1.7 * b2.error_estimate),
                 f"case III linearity broken: dev {dev:.2e}")
    return "work(a F) = a work(F) for a in {0.5, 2, -1.3, 1.7}"


def check_orientation_reversal():
    cases = [
        fixed_case_iv_pair(),
        (ForceField.from_text("0", "0", "x+y"),
         ParamCurve.from_text("t", "0", "5", 0.0, 1.0)),
        (ForceField.from_text("1", "1", "-1/2"),
         ParamCurve.from_text("3", "4", "t", 0.0, 2.0)),
    ]
    for field, curve in cases:
        fwd = work(field, curve)
        bwd = work(field, curve.reversed())
        dev = abs(fwd.value + bwd.value)
        allowed = (1e-9 * max(1.0, abs(fwd.value))
                   + 10.0 * (fwd.error_estimate + bwd.error_estimate))
        _require(dev <= allowed,
                 f"reversal did not negate: {fwd.value!r} vs {bwd.value!r}")
    return "parameter reversal negates the work"


def check_completion_cases(rng=None):
    rng = rng or np.random.default_rng(115)
    for _ in range(25):
        field, curve = make_case_iv_instance(rng)
        diag = classify_case(field, curve)  # raises NotIsotropic on failure
        _require(diag.tag in (WorkMethod.CASE_I_COLLINEAR,
                              WorkMethod.CASE_IV_GENERAL),
                 f"completion landed in {diag.tag}")
    return "isotropic completions always land in Case I or Case IV"


# ---------------------------------------------------------------------------
# the 2-plane

def _case_c_phis(n):
    """n case-C angles, excluding |cos phi| < 0.05 around the right angle
    and a 1e-3 guard below the double-root angle."""
    lo = np.linspace(0.05, math.acos(0.05), n // 2, endpoint=True)
    hi = np.linspace(math.acos(-0.05), ARCCOS_THIRD - 1e-3, n - n // 2,
                     endpoint=True)
    return np.concatenate([lo, hi])


def check_case_b_slope():
    ctx = build_plane(ARCCOS_THIRD)
    _require(ctx.case_tag is PlaneCase.B_DOUBLE_ROOT,
             f"arccos(-1/3) classified {ctx.case_tag}")
    _require(abs(ctx.k1 - math.sqrt(2.0)) <= 1e-12,
             f"double root {ctx.k1!r} != sqrt(2)")
    _require(ctx.k1 == ctx.k2, "case B roots differ")
    return f"double root {ctx.k1!r} = sqrt(2) to 1e-12"


def check_discriminant_identity():
    worst = 0.0
    for k in range(1000):
        phi = (k + 1) / 1000.0 * plane2.PHI_SUP
        c = math.cos(phi)
        s = math.sin(phi)
        quad = plane2.quadratic_discriminant(phi)
        closed = (1.0 + c) * (1.0 + 3.0 * c)
        t1 = s * s * (1.0 + 2.0 * c) ** 2
        t2 = 4.0 * c ** 3 * (1.0 + c)
        scale = max(abs(closed), abs(t1), abs(t2), 1e-300)
        rel = abs(quad - closed) / scale
        worst = max(worst, rel)
        _require(rel <= 1e-12,
                 f"discriminant identity off by {rel:.2e} at phi={phi}")
    return f"s²(1+2c)²+4c³(1+c) = (1+c)(1+3c) (1000 phis, worst {worst:.1e})"


def check_root_residual():
    worst = 0.0
    for phi in _case_c_phis(400):
        ctx = build_plane(float(phi))
        qa = ctx.c * ctx.c
        qb = -ctx.s * (1.0 + 2.0 * ctx.c)
        qc = -(1.0 + ctx.c) * ctx.c
        for k in (ctx.k1, ctx.k2):
            res = abs((qa * k + qb) * k + qc)
            bound = 1e-12 * max(1.0, abs(qa * k * k), abs(qc))
            worst = max(worst, res / max(1.0, abs(qa * k * k), abs(qc)))
            _require(res <= bound, f"root residual {res:.2e} at phi={phi}")
    return f"slope-quadratic residuals <= 1e-12 (worst {worst:.1e})"


def check_vieta():
    phis = np.concatenate([_case_c_phis(400), [ARCCOS_THIRD]])
    worst = 0.0
    for phi in phis:
        ctx = build_plane(float(phi))
        c, s = ctx.c, ctx.s
        sum_dev = abs(ctx.k1 + ctx.k2 - s * (1.0 + 2.0 * c) / (c * c))
        prod_dev = abs(ctx.k1 * ctx.k2 + (1.0 + c) / c)
        worst = max(worst, sum_dev, prod_dev)
        _require(sum_dev <= 1e-10, f"Vieta sum off by {sum_dev:.2e} at {phi}")
        _require(prod_dev <= 1e-10, f"Vieta product off by {prod_dev:.2e} at {phi}")
    return f"Vieta relations hold to 1e-10 (worst {worst:.1e})"


def check_case_c_coefficient():
    worst = 0.0
    for phi in _case_c_phis(500):
        ctx = build_plane(float(phi))
        lhs = f_pair(ctx, (1.0, ctx.k2), (1.0, ctx.k1))
        rhs = (1.0 + 3.0 * ctx.c) / (ctx.c * ctx.c)
        rel = abs(lhs - rhs) / max(abs(rhs), 1e-300)
        worst = max(worst, rel)
        _require(rel <= 1e-12,
                 f"f(i+k2 j, i+k1 j) != (1+3c)/c²: rel {rel:.2e} at phi={phi}")
    return f"cross pairing equals (1+3c)/c² (500 phis, worst {worst:.1e})"


def check_case_boundaries():
    grid = [
        (ARCCOS_THIRD + 1e-3, PlaneCase.A_NO_ISOTROPIC),
        (ARCCOS_THIRD, PlaneCase.B_DOUBLE_ROOT),
        (ARCCOS_THIRD - 1e-3, PlaneCase.C_TWO_DIRECTIONS),
        (0.5 * math.pi, PlaneCase.D_RIGHT_ANGLE),
        (0.5 * math.pi + 1e-3, PlaneCase.C_TWO_DIRECTIONS),
        (0.5 * math.pi - 1e-3, PlaneCase.C_TWO_DIRECTIONS),
        (plane2.PHI_SUP, PlaneCase.A_NO_ISOTROPIC),
    ]
    for phi, want in grid:
        got = build_plane(phi).case_tag
        _require(got is want, f"phi={phi}: expected {want}, got {got}")
    return "case tags correct around both boundaries and at 2pi/3"


def check_circle_consistency(rng=None):
    rng = rng or np.random.default_rng(116)
    for phi in (0.4, 1.1, 0.5 * math.pi, 1.8, 2.0):
        ctx = build_plane(phi)
        for _ in range(40):
            x, y = rng.uniform(-3, 3, 2)
            lhs = 2.0 * plane2.circle_residual(ctx, 0.0, x, y)
            rhs = f_pair(ctx, (x, y), (x, y))
            _require(abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs)),
                     f"circle equation != f(w,w) at phi={phi}")
        for d in plane2.iso_directions(ctx):
            if d.vertical:
                continue
            res = plane2.circle_residual(ctx, 0.0, 1.0, d.slope)
            _require(abs(res) <= 1e-12 * max(1.0, abs(d.slope) ** 2),
                     f"isotropic direction off the a=0 cone at phi={phi}")
    return "2 x circle residual(a=0) = f(w,w); cone contains the directions"


def check_table1_pattern():
    rows = table1_report(parse("1"), 0.0, 1.0)
    _require(len(rows) == 8, f"expected 8 rows, got {len(rows)}")
    _require(rows[0].value is None and rows[0].trajectory == "no is. curves",
             "row 1 should report no isotropic curves")
    for i in (1, 2, 3):
        _require(rows[i].value == 0.0, f"row {i + 1} should be exactly 0")
    for i in (4, 5, 6, 7):
        _require(rows[i].value is not None and abs(rows[i].value) > 1e-6,
                 f"row {i + 1} should carry a nonzero quadrature value")
    _require(abs(rows[4].value - 10.0) <= 1e-9, "row 5 at pi/3, P=1 must be 10")
    _require(abs(rows[6].value - 1.0) <= 1e-12, "row 7 with P=1 must be 1")
    return "eight rows; zero/nonzero/absent pattern as published"


# ---------------------------------------------------------------------------
# runner

@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float


CHECKS = [
    ("algebra_q_cycle", check_q_cycle),
    ("algebra_g_isometry", check_g_isometry),
    ("algebra_f_symmetry_isometry", check_f_symmetry_isometry),
    ("algebra_f_orthonormal_matrix", check_f_orthonormal_matrix),
    ("algebra_metric_signature", check_metric_signature),
    ("algebra_mat_f_shift_identity", check_mat_f_shift_identity),
    ("expr_roundtrip", check_expr_roundtrip),
    ("expr_determinism", check_expr_determinism),
    ("expr_autodiff_vs_fd", check_autodiff_vs_fd),
    ("quad_polynomial_exactness", check_quad_polynomial_exactness),
    ("quad_linearity", check_quad_linearity),
    ("quad_additivity", check_quad_additivity),
    ("fields_completed_curve_isotropy", check_completed_curve_isotropy),
    ("fields_completed_force_identity", check_completed_force_identity),
    ("fields_collinearity_scaling", check_collinearity_scaling),
    ("fields_branch_classifier", check_branch_classifier),
    ("work_collinear_zero", check_collinear_work_zero),
    ("work_oracle_equivalence", check_oracle_equivalence),
    ("work_linearity", check_work_linearity),
    ("work_orientation_reversal", check_orientation_reversal),
    ("work_completion_cases", check_completion_cases),
    ("plane_case_b_slope", check_case_b_slope),
    ("plane_discriminant_identity", check_discriminant_identity),
    ("plane_root_residual", check_root_residual),
    ("plane_vieta", check_vieta),
    ("plane_case_c_coefficient", check_case_c_coefficient),
    ("plane_case_boundaries", check_case_boundaries),
    ("plane_circle_consistency", check_circle_consistency),
    ("plane_table1_pattern", check_table1_pattern),
]


def run_all(only: str | None = None, out=print) -> list[CheckResult]:
    results = []
    for name, fn in CHECKS:
        if only and only not in name:
            continue
        start = time.perf_counter()
        try:
            detail = fn() or ""
            ok = True
        except CheckFailure as exc:
            detail = str(exc)
            ok = False
        elapsed = time.perf_counter() - start
        results.append(CheckResult(name, ok, detail, elapsed))
        status = "PASS" if ok else "FAIL"
        out(f"{status}  {name:34s} ({elapsed:6.2f}s)  {detail}")
    return results
