"""Q-structure algebra on a single 3-dimensional tangent space.

The space carries a cyclic endomorphism Q with Q^3 = id acting on a basis
{i, Qi, Q^2 i} whose pairwise angles all equal phi (Q is a g-isometry, so
one angle determines the Gram matrix).  Everything is expressed in Q-basis
coordinates (u, v, q):

  gram_g = circulant(1, cos phi, cos phi)          positive definite on
                                                   phi in (0, 2pi/3)
  mat_f[a][b] = gram_g[a][s(b)] + gram_g[s(a)][b]  with s the cyclic shift,
         = circulant(2 cos phi, 1 + cos phi, 1 + cos phi)

f is symmetric and indefinite for every admissible phi: its eigenvalues are
2 + 4 cos phi (simple) and cos phi - 1 < 0 (double).  Vectors split into
space-like (f(r,r) > 0), isotropic (= 0) and time-like (< 0).  In the
orthonormal frame (phi = pi/2) isotropy reduces to uv + vq + qu = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import OutOfRangeError

PHI_MAX = 2.0 * math.pi / 3.0
ORTHONORMAL_PHI = 0.5 * math.pi

# |f(r,r)| below this (scaled by max(1, |r|^2)) counts as isotropic.
CLASSIFY_TOL = 1e-9

# cos(float(pi/2)) is ~6e-17, not 0; snap so the orthonormal frame is exact.
_COS_SNAP = 1e-15


@dataclass(frozen=True)
class Vec3Q:
    """Tangent vector by coordinates in the Q-basis {i, Qi, Q^2 i}."""

    u: float
    v: float
    q: float

    def __post_init__(self):
        for c in (self.u, self.v, self.q):
            if not math.isfinite(c):
                raise ValueError("Vec3Q coordinates must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.u, self.v, self.q])


class VectorKind(Enum):
    SPACE_LIKE = "space_like"
    ISOTROPIC = "isotropic"
    TIME_LIKE = "time_like"


@dataclass(frozen=True)
class VectorClass:
    tag: VectorKind
    f_norm: float


@dataclass(frozen=True)
class QFrame:
    """Frame data for one choice of the basis angle phi."""

    phi: float
    cos_phi: float = field(init=False)

    def __post_init__(self):
        if not (0.0 < self.phi < PHI_MAX):
            raise OutOfRangeError(
                f"phi must lie strictly inside (0, 2*pi/3), got {self.phi}")
        c = math.cos(self.phi)
        if abs(c) < _COS_SNAP:
            c = 0.0
        object.__setattr__(self, "cos_phi", c)

    @property
    def gram_g(self) -> np.ndarray:
        c = self.cos_phi
        return np.array([[1.0, c, c], [c, 1.0, c], [c, c, 1.0]])

    @property
    def mat_f(self) -> np.ndarray:
        d = 2.0 * self.cos_phi
        o = 1.0 + self.cos_phi
        return np.array([[d, o, o], [o, d, o], [o, o, d]])


def apply_q(r: Vec3Q) -> Vec3Q:
    """Coordinates of Qr: the cyclic shift (u, v, q) -> (q, u, v)."""
    return Vec3Q(r.q, r.u, r.v)


def g_inner(frame: QFrame, r: Vec3Q, w: Vec3Q) -> float:
    """Riemannian inner product g(r, w) in the Q-basis.

    Written as an explicit expansion (not a matmul) so that swapping r and w
    reproduces the identical sequence of IEEE operations: symmetry is exact.
    """
    c = frame.cos_phi
    diag = r.u * w.u + r.v * w.v + r.q * w.q
    off = (r.u * w.v + r.v * w.u) + (r.v * w.q + r.q * w.v) + (r.u * w.q + r.q * w.u)
    return diag + c * off


def f_inner(frame: QFrame, r: Vec3Q, w: Vec3Q) -> float:
    """Associated metric f(r, w) = g(r, Qw) + g(Qr, w); symmetric, indefinite."""
    d = 2.0 * frame.cos_phi
    o = 1.0 + frame.cos_phi
    diag = r.u * w.u + r.v * w.v + r.q * w.q
    off = (r.u * w.v + r.v * w.u) + (r.v * w.q + r.q * w.v) + (r.u * w.q + r.q * w.u)
    return d * diag + o * off


def isotropy_residual_orthonormal(r: Vec3Q) -> float:
    """uv + vq + qu; zero iff r is isotropic in the orthonormal frame."""
    return r.u * r.v + r.v * r.q + r.q * r.u


def classify(frame: QFrame, r: Vec3Q) -> VectorClass:
    """Tag r by the sign of f(r, r) with a scale-aware tolerance."""
    fn = f_inner(frame, r, r)
    scale = max(1.0, r.u * r.u + r.v * r.v + r.q * r.q)
    if abs(fn) <= CLASSIFY_TOL * scale:
        tag = VectorKind.ISOTROPIC
    elif fn > 0.0:
        tag = VectorKind.SPACE_LIKE
    else:
        tag = VectorKind.TIME_LIKE
    return VectorClass(tag, fn)


def orthonormal_frame() -> QFrame:
    """The phi = pi/2 frame used by all 3-space work computations."""
    return QFrame(ORTHONORMAL_PHI)
