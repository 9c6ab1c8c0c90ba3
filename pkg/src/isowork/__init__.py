"""Work of isotropic force fields along isotropic curves on (M, g, Q).

The tangent space carries a cyclic Q-structure (Q^3 = id, a g-isometry) and
the indefinite associated metric f(r, w) = g(r, Qw) + g(Qr, w).  This
package classifies vectors against the null cone of f, computes the line
integral of f(F, dr) for isotropic data in 3-space through four closed-form
cases cross-checked against direct quadrature, and reproduces the 2-plane
case table.
"""

__version__ = "0.1.0"

from .algebra import (
    QFrame,
    Vec3Q,
    VectorClass,
    VectorKind,
    apply_q,
    classify,
    f_inner,
    g_inner,
    isotropy_residual_orthonormal,
    orthonormal_frame,
)
from .backend import BACKEND
from .exprlang import DualValue, eval_dual, evaluate, parse, pretty_print
from .fields_curves import (
    CollinearityReport,
    CompletedCurve,
    ForceField,
    ParamCurve,
    collinearity_check,
    complete_isotropic_curve,
    complete_isotropic_force,
    curve_isotropy_residual,
    force_isotropy_residual,
)
from .plane2 import (
    IsoDirection,
    PlaneCase,
    PlaneContext,
    build_plane,
    circle_residual,
    iso_directions,
    table1_report,
    work_cross,
    work_right_angle,
)
from .quadrature import QuadResult, integrate
from .work3d import (
    WorkMethod,
    WorkResult,
    classify_case,
    work,
    work_case_ii,
    work_case_iii,
    work_case_iv,
    work_direct,
)

__all__ = [
    "BACKEND", "__version__",
    "QFrame", "Vec3Q", "VectorClass", "VectorKind", "apply_q", "classify",
    "f_inner", "g_inner", "isotropy_residual_orthonormal", "orthonormal_frame",
    "DualValue", "eval_dual", "evaluate", "parse", "pretty_print",
    "CollinearityReport", "CompletedCurve", "ForceField", "ParamCurve",
    "collinearity_check", "complete_isotropic_curve",
    "complete_isotropic_force", "curve_isotropy_residual",
    "force_isotropy_residual",
    "IsoDirection", "PlaneCase", "PlaneContext", "build_plane",
    "circle_residual", "iso_directions", "table1_report", "work_cross",
    "work_right_angle",
    "QuadResult", "integrate",
    "WorkMethod", "WorkResult", "classify_case", "work", "work_case_ii",
    "work_case_iii", "work_case_iv", "work_direct",
]
