"""Work A = ∫ f(F, dr) of an isotropic force along an isotropic curve.

In the orthonormal frame the pairing expands to the direct integrand

    P (y'+z') + R (x'+z') + S (x'+y')

which serves as the always-available quadrature oracle.  On top of it sit
the four closed-form cases for isotropic data:

    I    F and r' collinear                ->  A = 0 exactly
    II   x'+y' = 0 (so x, y constant)      ->  A = ∫ (P+R)(k1,k2,z) z' dt
    III  P+R = 0 (so P = R = 0)            ->  A = ∫ S (x'+y') dt
    IV   both nonzero                      ->  A = ∫ (Py'-Rx')² / ((P+R)(x'+y')) dt

Cases II/III keep the tangent factor (z', resp. x'+y') so the values are
parameterization-invariant; the dispatcher runs the case formula *and* the
direct oracle and fails loudly if they disagree beyond 10x the combined
error estimates.  Overlapping hypotheses resolve by precedence I > II > III
> IV (any overlap yields equal values, enforced by the same cross-check).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    CrossCheckFailureError,
    NearSingularDenominatorError,
    NotIsotropicError,
)
from .exprlang import compile_ast
from .fields_curves import (
    COLLINEAR_TOL,
    N_SAMPLES,
    ForceField,
    sample_pair,
)
from .quadrature import DEFAULT_TOL, BatchIntegrand, integrate

# Hypotheses of the case formulas must hold this tightly before dispatch.
ISO_ADMIT_TOL = 1e-8
# Scale-aware threshold for "identically zero" sampling classifiers.
ZERO_TOL = 1e-9
# Case IV denominator guard.
NEAR_SINGULAR_TOL = 1e-12

_FALLBACK_FLAG = "case_iv_near_singular_fallback"


class WorkMethod(Enum):
    CASE_I_COLLINEAR = "case_i"
    CASE_II_DXDY_ZERO = "case_ii"
    CASE_III_PR_ZERO = "case_iii"
    CASE_IV_GENERAL = "case_iv"
    DIRECT_QUADRATURE = "direct"


@dataclass(frozen=True)
class WorkResult:
    value: float
    method: WorkMethod
    error_estimate: float
    case_assumption_residual: float
    cross_check_delta: float | None = None
    flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class CaseDiagnostics:
    tag: WorkMethod
    isotropic: bool
    force_residual: float
    curve_residual: float
    max_minor: float
    dxdy_residual: float
    pr_residual: float
    k_samples: np.ndarray


def diagnose(field: ForceField, curve, n_samples: int = N_SAMPLES) -> CaseDiagnostics:
    """Sampling classifier; never raises on non-isotropic input."""
    sp = sample_pair(field, curve, n_samples)
    if sp.max_minor <= COLLINEAR_TOL:
        tag = WorkMethod.CASE_I_COLLINEAR
    elif sp.dxdy_residual <= ZERO_TOL:
        tag = WorkMethod.CASE_II_DXDY_ZERO
    elif sp.pr_residual <= ZERO_TOL:
        tag = WorkMethod.CASE_III_PR_ZERO
    else:
        tag = WorkMethod.CASE_IV_GENERAL
    isotropic = (sp.curve_residual <= ISO_ADMIT_TOL
                 and sp.force_residual <= ISO_ADMIT_TOL)
    return CaseDiagnostics(tag, isotropic, sp.force_residual, sp.curve_residual,
                           sp.max_minor, sp.dxdy_residual, sp.pr_residual,
                           sp.k_samples)


def classify_case(field: ForceField, curve, n_samples: int = N_SAMPLES
                  ) -> CaseDiagnostics:
    """As `diagnose`, but enforces the isotropy hypotheses."""
    diag = diagnose(field, curve, n_samples)
    if not diag.isotropic:
        raise NotIsotropicError(
            f"isotropy residuals too large (force {diag.force_residual:.3e}, "
            f"curve {diag.curve_residual:.3e}, admit tol {ISO_ADMIT_TOL:.0e})")
    return diag


def work_direct(field: ForceField, curve, tol: float = DEFAULT_TOL) -> WorkResult:
    """General quadrature of the expanded pairing; no isotropy assumed."""

    def integrand(ts):
        st = curve.state(ts)
        ps, rs, ss = field.components(st.xs, st.ys, st.zs)
        return (ps * (st.dys + st.dzs) + rs * (st.dxs + st.dzs)
                + ss * (st.dxs + st.dys))

    q = integrate(BatchIntegrand(integrand), curve.alpha, curve.beta, tol)
    return WorkResult(q.value, WorkMethod.DIRECT_QUADRATURE, q.error_estimate, 0.0)


def work_case_ii(field: ForceField, curve, tol: float = DEFAULT_TOL,
                 diag: CaseDiagnostics | None = None) -> WorkResult:
    """A = ∫ (P+R)(k1, k2, z(t)) z'(t) dt with k1, k2 the constant x, y."""
    if diag is None:
        diag = diagnose(field, curve)
    mid = curve.state(np.array([0.5 * (curve.alpha + curve.beta)]))
    k1 = float(mid.xs[0])
    k2 = float(mid.ys[0])
    p_prog = compile_ast(field.p)
    r_prog = compile_ast(field.r)

    def integrand(ts):
        st = curve.state(ts)
        ps = p_prog.eval(xs=k1, ys=k2, zs=st.zs, n=st.zs.size)
        rs = r_prog.eval(xs=k1, ys=k2, zs=st.zs, n=st.zs.size)
        return (ps + rs) * st.dzs

    q = integrate(BatchIntegrand(integrand), curve.alpha, curve.beta, tol)
    return WorkResult(q.value, WorkMethod.CASE_II_DXDY_ZERO, q.error_estimate,
                      diag.dxdy_residual)


def work_case_iii(field: ForceField, curve, tol: float = DEFAULT_TOL,
                  diag: CaseDiagnostics | None = None) -> WorkResult:
    """A = ∫ S(x, y, z) (x'+y') dt."""
    if diag is None:
        diag = diagnose(field, curve)

    def integrand(ts):
        st = curve.state(ts)
        _, _, ss = field.components(st.xs, st.ys, st.zs)
        return ss * (st.dxs + st.dys)

    q = integrate(BatchIntegrand(integrand), curve.alpha, curve.beta, tol)
    return WorkResult(q.value, WorkMethod.CASE_III_PR_ZERO, q.error_estimate,
                      diag.pr_residual)


def work_case_iv(field: ForceField, curve, tol: float = DEFAULT_TOL,
                 diag: CaseDiagnostics | None = None) -> WorkResult:
    """A = ∫ (Py'-Rx')² / ((P+R)(x'+y')) dt; falls back to the direct
    quadrature (flagged) if the denominator nears zero at any node."""
    if diag is None:
        diag = diagnose(field, curve)
    residual = max(diag.force_residual, diag.curve_residual)

    def integrand(ts):
        st = curve.state(ts)
        ps, rs, _ = field.components(st.xs, st.ys, st.zs)
        den = (ps + rs) * (st.dxs + st.dys)
        guard = (NEAR_SINGULAR_TOL
                 * np.maximum(1.0, np.maximum(np.abs(ps), np.abs(rs)))
                 * np.maximum(1.0, np.maximum(np.abs(st.dxs), np.abs(st.dys))))
        small = np.abs(den) < guard
        if small.any():
            raise NearSingularDenominatorError(
                f"(P+R)(x'+y') ~ 0 near t = {ts[int(np.argmax(small))]!r}")
        return (ps * st.dys - rs * st.dxs) ** 2 / den

    try:
        q = integrate(BatchIntegrand(integrand), curve.alpha, curve.beta, tol)
    except NearSingularDenominatorError:
        direct = work_direct(field, curve, tol)
        return dataclasses.replace(direct, case_assumption_residual=residual,
                                   flags=(_FALLBACK_FLAG,))
    return WorkResult(q.value, WorkMethod.CASE_IV_GENERAL, q.error_estimate,
                      residual)


_CASE_FORMULAS = {
    WorkMethod.CASE_II_DXDY_ZERO: work_case_ii,
    WorkMethod.CASE_III_PR_ZERO: work_case_iii,
    WorkMethod.CASE_IV_GENERAL: work_case_iv,
}


def work(field: ForceField, curve, tol: float = DEFAULT_TOL) -> WorkResult:
    """Dispatch on the detected case and cross-validate against the oracle.

    Case I returns exactly 0 with no quadrature; the other cases also run
    the direct integrand and must agree within 10x combined estimates.
    """
    diag = classify_case(field, curve)
    if diag.tag is WorkMethod.CASE_I_COLLINEAR:
        return WorkResult(0.0, WorkMethod.CASE_I_COLLINEAR, 0.0, diag.max_minor)
    result = _CASE_FORMULAS[diag.tag](field, curve, tol, diag)
    if _FALLBACK_FLAG in result.flags:
        return result
    direct = work_direct(field, curve, tol)
    delta = abs(result.value - direct.value)
    allowed = 10.0 * (result.error_estimate + direct.error_estimate)
    if delta > allowed:
        raise CrossCheckFailureError(
            f"{result.method.value} formula {result.value!r} vs direct "
            f"quadrature {direct.value!r}: |delta| = {delta:.3e} > {allowed:.3e}")
    return dataclasses.replace(result, cross_check_delta=delta)
