import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isowork.algebra import (
    PHI_MAX,
    QFrame,
    Vec3Q,
    VectorKind,
    apply_q,
    classify,
    f_inner,
    g_inner,
    isotropy_residual_orthonormal,
    orthonormal_frame,
)
from isowork.errors import OutOfRangeError

coords = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


def vec(u, v, q):
    return Vec3Q(float(u), float(v), float(q))


class TestApplyQ:
    @pytest.mark.parametrize("r, expected", [
        ((1, 0, 0), (0, 1, 0)),
        ((0, 0, 1), (1, 0, 0)),
        ((2, 3, 5), (5, 2, 3)),
    ])
    def test_basis_action(self, r, expected):
        assert apply_q(vec(*r)) == vec(*expected)

    @given(st.tuples(coords, coords, coords))
    @settings(max_examples=100, deadline=None)
    def test_q_cubed_is_identity(self, uvq):
        r = vec(*uvq)
        assert apply_q(apply_q(apply_q(r))) == r


class TestGInner:
    def test_orthonormal_unit(self):
        frame = orthonormal_frame()
        assert g_inner(frame, vec(1, 0, 0), vec(1, 0, 0)) == 1.0
        assert g_inner(frame, vec(1, 0, 0), vec(0, 1, 0)) == 0.0

    def test_gram_entry_matches_direct_construction(self):
        # oracle: the Gram matrix forced by Q-isometry has cos(phi) off-diagonal
        phi = math.pi / 3
        frame = QFrame(phi)
        oracle = np.full((3, 3), math.cos(phi))
        np.fill_diagonal(oracle, 1.0)
        basis = [vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1)]
        for a in range(3):
            for b in range(3):
                assert g_inner(frame, basis[a], basis[b]) == pytest.approx(
                    oracle[a, b], abs=1e-15)
        assert g_inner(frame, basis[0], basis[1]) == pytest.approx(0.5, abs=1e-15)

    def test_positive_on_nonzero(self):
        frame = QFrame(1.1)
        r = vec(0.3, -1.2, 2.0)
        assert g_inner(frame, r, r) > 0.0


class TestFInner:
    def test_orthonormal_diagonal_via_f3_expansion(self):
        # oracle: f(i,i) = g(i,Qi) + g(Qi,i) = 2 cos(phi)
        frame = orthonormal_frame()
        i = vec(1, 0, 0)
        oracle = g_inner(frame, i, apply_q(i)) + g_inner(frame, apply_q(i), i)
        assert oracle == 0.0
        assert f_inner(frame, i, i) == oracle

    def test_orthonormal_offdiagonal_via_f3_expansion(self):
        frame = orthonormal_frame()
        i, qi = vec(1, 0, 0), vec(0, 1, 0)
        oracle = g_inner(frame, i, apply_q(qi)) + g_inner(frame, apply_q(i), qi)
        assert oracle == 1.0
        assert f_inner(frame, i, qi) == oracle

    def test_cone_vector(self):
        frame = orthonormal_frame()
        r = vec(1, 1, -0.5)
        assert f_inner(frame, r, r) == pytest.approx(0.0, abs=1e-15)
        assert f_inner(frame, r, r) == pytest.approx(
            2.0 * (1 * 1 + 1 * (-0.5) + (-0.5) * 1), abs=1e-15)

    def test_equals_f3_definition_generic_frame(self):
        frame = QFrame(0.9)
        rng = np.random.default_rng(7)
        for _ in range(50):
            r = vec(*rng.uniform(-2, 2, 3))
            w = vec(*rng.uniform(-2, 2, 3))
            via_def = (g_inner(frame, r, apply_q(w))
                       + g_inner(frame, apply_q(r), w))
            assert f_inner(frame, r, w) == pytest.approx(via_def, rel=1e-14,
                                                         abs=1e-14)

    @given(st.tuples(coords, coords, coords), st.tuples(coords, coords, coords))
    @settings(max_examples=100, deadline=None)
    def test_symmetry_exact(self, a, b):
        frame = QFrame(1.3)
        r, w = vec(*a), vec(*b)
        assert f_inner(frame, r, w) == f_inner(frame, w, r)


class TestClassify:
    def test_isotropic(self):
        vc = classify(orthonormal_frame(), vec(1, 1, -0.5))
        assert vc.tag is VectorKind.ISOTROPIC

    def test_space_like(self):
        vc = classify(orthonormal_frame(), vec(1, 1, 1))
        assert vc.tag is VectorKind.SPACE_LIKE
        assert vc.f_norm == pytest.approx(6.0)

    def test_time_like(self):
        vc = classify(orthonormal_frame(), vec(1, -1, 0))
        assert vc.tag is VectorKind.TIME_LIKE
        assert vc.f_norm == pytest.approx(-2.0)


class TestIsotropyResidual:
    @pytest.mark.parametrize("r, expected", [
        ((1, 0, 0), 0.0),
        ((1, 1, -0.5), 0.0),
        ((1, 1, 1), 3.0),
    ])
    def test_examples(self, r, expected):
        assert isotropy_residual_orthonormal(vec(*r)) == pytest.approx(
            expected, abs=1e-15)


class TestQFrame:
    def test_matrices(self):
        frame = QFrame(math.pi / 3)
        c = 0.5
        assert np.allclose(frame.gram_g, [[1, c, c], [c, 1, c], [c, c, 1]],
                           atol=2e-16)
        assert np.allclose(frame.mat_f,
                           [[2 * c, 1 + c, 1 + c],
                            [1 + c, 2 * c, 1 + c],
                            [1 + c, 1 + c, 2 * c]], atol=2e-16)

    def test_orthonormal_f_matrix_exact(self):
        assert np.array_equal(orthonormal_frame().mat_f,
                              [[0, 1, 1], [1, 0, 1], [1, 1, 0]])

    def test_shift_identity(self):
        frame = QFrame(0.8)
        g, f = frame.gram_g, frame.mat_f
        sigma = [1, 2, 0]
        for a in range(3):
            for b in range(3):
                assert f[a][b] == pytest.approx(
                    g[a][sigma[b]] + g[sigma[a]][b], abs=1e-15)

    def test_indefinite_and_posdef(self):
        for phi in np.linspace(0.05, PHI_MAX - 0.02, 40):
            frame = QFrame(float(phi))
            ew_f = np.linalg.eigvalsh(frame.mat_f)
            assert ew_f[0] < 0 < ew_f[-1]
            assert np.linalg.eigvalsh(frame.gram_g)[0] > 0

    @pytest.mark.parametrize("phi", [0.0, -0.1, PHI_MAX, PHI_MAX + 0.5])
    def test_phi_range(self, phi):
        with pytest.raises(OutOfRangeError):
            QFrame(phi)

    def test_nonfinite_vector_rejected(self):
        with pytest.raises(ValueError):
            Vec3Q(float("nan"), 0.0, 0.0)
