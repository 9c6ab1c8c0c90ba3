import math

import numpy as np
import pytest

from isowork.errors import CaseMismatchError, OutOfRangeError
from isowork.exprlang import parse
from isowork.plane2 import (
    ARCCOS_THIRD,
    PHI_SUP,
    PlaneCase,
    build_plane,
    circle_residual,
    f_pair,
    iso_directions,
    quadratic_discriminant,
    table1_report,
    work_cross,
    work_right_angle,
)

CASE_A_PHI = 2.0  # 114.6 degrees, safely above arccos(-1/3) ~ 109.47 degrees


class TestBuildPlane:
    def test_case_b_double_root(self):
        ctx = build_plane(ARCCOS_THIRD)
        assert ctx.case_tag is PlaneCase.B_DOUBLE_ROOT
        assert ctx.k1 == ctx.k2
        assert abs(ctx.k1 - math.sqrt(2.0)) <= 1e-12

    def test_case_d_at_right_angle(self):
        ctx = build_plane(math.pi / 2)
        assert ctx.case_tag is PlaneCase.D_RIGHT_ANGLE
        assert ctx.discriminant == pytest.approx(1.0, abs=1e-15)
        assert ctx.k1 is None and ctx.k2 is None

    def test_case_c_vieta_at_pi_third(self):
        ctx = build_plane(math.pi / 3)
        assert ctx.case_tag is PlaneCase.C_TWO_DIRECTIONS
        assert ctx.k1 + ctx.k2 == pytest.approx(4.0 * math.sqrt(3.0), rel=1e-12)
        assert ctx.k1 * ctx.k2 == pytest.approx(-3.0, rel=1e-12)
        # oracle: the slopes must actually solve the quadratic
        for k in (ctx.k1, ctx.k2):
            res = (ctx.c ** 2 * k ** 2 - ctx.s * (1 + 2 * ctx.c) * k
                   - (1 + ctx.c) * ctx.c)
            assert abs(res) <= 1e-12

    def test_case_a(self):
        ctx = build_plane(CASE_A_PHI)
        assert ctx.case_tag is PlaneCase.A_NO_ISOTROPIC
        assert ctx.discriminant < 0.0

    def test_endpoint_is_case_a(self):
        ctx = build_plane(PHI_SUP)
        assert ctx.case_tag is PlaneCase.A_NO_ISOTROPIC

    @pytest.mark.parametrize("phi", [0.0, -0.2, PHI_SUP + 1e-9, 4.0])
    def test_out_of_range(self, phi):
        with pytest.raises(OutOfRangeError):
            build_plane(phi)

    def test_f_entries_match_g_table(self):
        # oracle: assemble f from the inner-product table
        #   f(i,i) = 2 g(i,Qi), f(i,j) = g(i,Qj) + g(j,Qi), f(j,j) = 2 g(j,Qj)
        for phi in (0.4, 1.0, 1.8):
            ctx = build_plane(phi)
            c, s = math.cos(phi), math.sin(phi)
            g_i_qi = c
            g_i_qj = (c - c * c) / s
            g_j_qi = s
            g_j_qj = -c * c / (1.0 + c)
            assert ctx.f_ii == pytest.approx(2.0 * g_i_qi, rel=1e-14, abs=1e-14)
            assert ctx.f_ij == pytest.approx(g_i_qj + g_j_qi, rel=1e-13)
            assert ctx.f_jj == pytest.approx(2.0 * g_j_qj, rel=1e-14)

    def test_case_boundaries(self):
        assert build_plane(ARCCOS_THIRD + 1e-3).case_tag is PlaneCase.A_NO_ISOTROPIC
        assert build_plane(ARCCOS_THIRD - 1e-3).case_tag is PlaneCase.C_TWO_DIRECTIONS
        assert build_plane(math.pi / 2 + 1e-3).case_tag is PlaneCase.C_TWO_DIRECTIONS
        assert build_plane(math.pi / 2 - 1e-3).case_tag is PlaneCase.C_TWO_DIRECTIONS


class TestDiscriminant:
    def test_identity_on_grid(self):
        for k in range(1000):
            phi = (k + 1) / 1000.0 * PHI_SUP
            c = math.cos(phi)
            closed = (1.0 + c) * (1.0 + 3.0 * c)
            quad = quadratic_discriminant(phi)
            s = math.sin(phi)
            scale = max(abs(closed), abs(s * s * (1 + 2 * c) ** 2),
                        abs(4 * c ** 3 * (1 + c)), 1e-300)
            assert abs(quad - closed) <= 1e-12 * scale


class TestCircle:
    def test_isotropic_direction_on_zero_cone(self):
        ctx = build_plane(math.pi / 3)
        for scale in (1.0, 3.7, -2.2):
            res = circle_residual(ctx, 0.0, scale, ctx.k1 * scale)
            assert abs(res) <= 1e-12 * max(1.0, scale * scale * ctx.k1 ** 2)

    def test_origin(self):
        ctx = build_plane(1.0)
        assert circle_residual(ctx, 0.0, 0.0, 0.0) == 0.0

    def test_unit_i_on_its_circle(self):
        # f(i,i) = 2 cos(pi/3) = 1, so i lies on the circle a = 1
        ctx = build_plane(math.pi / 3)
        assert circle_residual(ctx, 1.0, 1.0, 0.0) == pytest.approx(0.0, abs=1e-15)

    def test_matches_f_pair(self):
        rng = np.random.default_rng(31)
        for phi in (0.7, math.pi / 2, 1.9):
            ctx = build_plane(phi)
            for _ in range(25):
                x, y = rng.uniform(-3, 3, 2)
                assert 2.0 * circle_residual(ctx, 0.0, x, y) == pytest.approx(
                    f_pair(ctx, (x, y), (x, y)), rel=1e-12, abs=1e-12)

    def test_negative_radius_rejected(self):
        ctx = build_plane(1.0)
        with pytest.raises(ValueError):
            circle_residual(ctx, -1.0, 0.0, 0.0)


class TestIsoDirections:
    def test_case_b_single(self):
        dirs = iso_directions(build_plane(ARCCOS_THIRD))
        assert len(dirs) == 1
        assert abs(dirs[0].slope - math.sqrt(2.0)) <= 1e-12

    def test_case_a_empty(self):
        assert iso_directions(build_plane(CASE_A_PHI)) == []

    def test_case_c_two_roots(self):
        dirs = iso_directions(build_plane(math.pi / 3))
        assert len(dirs) == 2
        assert dirs[0].slope * dirs[1].slope == pytest.approx(-3.0, rel=1e-12)

    def test_case_d_axes(self):
        dirs = iso_directions(build_plane(math.pi / 2))
        assert dirs[0].vertical and dirs[0].label() == "x=0"
        assert dirs[1].slope == 0.0 and dirs[1].label() == "y=0"


class TestWorkCross:
    def test_coefficient_ten(self):
        ctx = build_plane(math.pi / 3)
        res = work_cross(ctx, parse("1"), "c2", "c1", 0.0, 1.0)
        assert res.value == pytest.approx(10.0, rel=1e-12)

    def test_oracle_f_pairing(self):
        # oracle: A = f(i + k_src j, i + k_tgt j) * integral of P along target
        ctx = build_plane(1.1)
        coeff = f_pair(ctx, (1.0, ctx.k2), (1.0, ctx.k1))
        res = work_cross(ctx, parse("1"), "c2", "c1", 0.0, 2.0)
        assert res.value == pytest.approx(coeff * 2.0, rel=1e-11)

    def test_same_direction_zero(self):
        ctx = build_plane(math.pi / 3)
        assert work_cross(ctx, parse("x"), "c1", "c1", 0.0, 1.0).value == 0.0
        assert work_cross(ctx, parse("x"), "c2", "c2", 0.0, 1.0).value == 0.0

    def test_case_b_zero(self):
        ctx = build_plane(ARCCOS_THIRD)
        assert work_cross(ctx, parse("x+y"), "c2", "c1", 0.0, 1.0).value == 0.0

    def test_case_a_mismatch(self):
        ctx = build_plane(CASE_A_PHI)
        with pytest.raises(CaseMismatchError):
            work_cross(ctx, parse("1"), "c2", "c1", 0.0, 1.0)

    def test_case_d_mismatch(self):
        ctx = build_plane(math.pi / 2)
        with pytest.raises(CaseMismatchError):
            work_cross(ctx, parse("1"), "c2", "c1", 0.0, 1.0)

    def test_nonconstant_p(self):
        # P(x, y) = x integrated along (t, k1 t) gives ∫ t dt
        ctx = build_plane(math.pi / 3)
        coeff = (1.0 + 3.0 * ctx.c) / ctx.c ** 2
        res = work_cross(ctx, parse("x"), "c2", "c1", 0.0, 1.0)
        assert res.value == pytest.approx(coeff * 0.5, rel=1e-12)
        # and P = y picks up the slope of the trajectory line
        res_y = work_cross(ctx, parse("y"), "c2", "c1", 0.0, 1.0)
        assert res_y.value == pytest.approx(coeff * ctx.k1 * 0.5, rel=1e-12)


class TestWorkRightAngle:
    def test_unit_p(self):
        assert work_right_angle(parse("1"), "c1", 0.0, 1.0).value == pytest.approx(
            1.0, abs=1e-14)

    def test_sum_both_orientations(self):
        p = parse("x+y")
        r1 = work_right_angle(p, "c1", 0.0, 1.0)
        r2 = work_right_angle(p, "c2", 0.0, 1.0)
        assert r1.value == pytest.approx(0.5, abs=1e-13)
        assert r2.value == pytest.approx(0.5, abs=1e-13)

    def test_bad_axis(self):
        with pytest.raises(ValueError):
            work_right_angle(parse("1"), "c3", 0.0, 1.0)


class TestTable1:
    def test_pattern(self):
        rows = table1_report(parse("1"), 0.0, 1.0)
        assert len(rows) == 8
        assert rows[0].value is None
        assert rows[0].trajectory == "no is. curves"
        assert [r.value for r in rows[1:4]] == [0.0, 0.0, 0.0]
        assert rows[4].value == pytest.approx(10.0, rel=1e-12)
        assert rows[5].value == pytest.approx(10.0, rel=1e-12)
        assert rows[6].value == pytest.approx(1.0, abs=1e-13)
        assert rows[7].value == pytest.approx(1.0, abs=1e-13)

    def test_cross_rows_use_printed_slopes(self):
        # row 5 pairs acting line c1 with integrand slope k1; with P = y the
        # two cross rows therefore differ by the slope ratio
        rows = table1_report(parse("y"), 0.0, 1.0)
        ctx = build_plane(math.pi / 3)
        coeff = (1.0 + 3.0 * ctx.c) / ctx.c ** 2
        assert rows[4].value == pytest.approx(coeff * ctx.k1 * 0.5, rel=1e-11)
        assert rows[5].value == pytest.approx(coeff * ctx.k2 * 0.5, rel=1e-11)

    def test_right_angle_rows_label_axes(self):
        rows = table1_report(parse("1"), 0.0, 1.0)
        assert rows[6].acts_on == "c1: x=0" and rows[6].trajectory == "c2: y=0"
        assert rows[7].acts_on == "c1: y=0" and rows[7].trajectory == "c2: x=0"
