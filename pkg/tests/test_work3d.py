import numpy as np
import pytest

from isowork.errors import CrossCheckFailureError, NotIsotropicError
from isowork.fields_curves import ForceField, ParamCurve
from isowork.verify import (
    fixed_case_iv_pair,
    make_case_ii_instance,
    make_case_iii_instance,
    make_case_iv_instance,
    make_collinear_pair,
)
from isowork.work3d import (
    WorkMethod,
    classify_case,
    diagnose,
    work,
    work_case_ii,
    work_case_iii,
    work_case_iv,
    work_direct,
)


class TestWorkDirect:
    def test_one_sixth(self):
        field, curve = fixed_case_iv_pair()
        res = work_direct(field, curve)
        assert res.value == pytest.approx(1.0 / 6.0, abs=1e-12)
        assert res.method is WorkMethod.DIRECT_QUADRATURE

    def test_collinear_pair_is_zero(self):
        field = ForceField.from_text("1", "1", "-1/2")
        curve = ParamCurve.from_text("t", "t", "-t/2", 0, 1)
        assert work_direct(field, curve).value == pytest.approx(0.0, abs=1e-13)

    def test_zero_force(self):
        field = ForceField.from_text("0", "0", "0")
        curve = ParamCurve.from_text("t", "2*t", "-2*t/3", 0, 1)
        assert work_direct(field, curve).value == 0.0


class TestClassify:
    def test_collinear(self):
        field = ForceField.from_text("1", "1", "-1/2")
        curve = ParamCurve.from_text("t", "t", "-t/2", 0, 1)
        assert classify_case(field, curve).tag is WorkMethod.CASE_I_COLLINEAR

    def test_constant_xy(self):
        field = ForceField.from_text("z", "0", "0")
        curve = ParamCurve.from_text("0.3", "-0.8", "t", 0, 1)
        assert classify_case(field, curve).tag is WorkMethod.CASE_II_DXDY_ZERO

    def test_pr_zero(self):
        field = ForceField.from_text("0", "0", "x+y")
        curve = ParamCurve.from_text("t", "0", "5", 0, 1)
        assert classify_case(field, curve).tag is WorkMethod.CASE_III_PR_ZERO

    def test_general(self):
        field, curve = fixed_case_iv_pair()
        assert classify_case(field, curve).tag is WorkMethod.CASE_IV_GENERAL

    def test_not_isotropic_force(self):
        field = ForceField.from_text("1", "1", "1")
        curve = ParamCurve.from_text("t", "t", "-t/2", 0, 1)
        with pytest.raises(NotIsotropicError):
            classify_case(field, curve)

    def test_not_isotropic_curve(self):
        field = ForceField.from_text("1", "1", "-1/2")
        curve = ParamCurve.from_text("t", "t", "t", 0, 1)
        with pytest.raises(NotIsotropicError):
            classify_case(field, curve)

    def test_overlap_prefers_case_i(self):
        # S-only field on a z-only curve satisfies II and III hypotheses but
        # is also collinear; precedence I > II > III applies
        field = ForceField.from_text("0", "0", "z")
        curve = ParamCurve.from_text("0", "0", "t", 0, 1)
        assert classify_case(field, curve).tag is WorkMethod.CASE_I_COLLINEAR


class TestCaseII:
    def test_z_force_unit_line(self):
        field = ForceField.from_text("z", "0", "0")
        curve = ParamCurve.from_text("0", "0", "t", 0, 1)
        res = work_case_ii(field, curve)
        assert res.value == pytest.approx(0.5, abs=1e-12)

    def test_constant_sum(self):
        field = ForceField.from_text("1", "1", "-1/2")
        curve = ParamCurve.from_text("3", "4", "t", 0, 2)
        res = work_case_ii(field, curve)
        assert res.value == pytest.approx(4.0, abs=1e-12)

    def test_reparameterized(self):
        # z(t) = t^2 on [0,1] covers the same segment; value is unchanged
        field = ForceField.from_text("z", "0", "0")
        curve = ParamCurve.from_text("0", "0", "t^2", 0, 1)
        res = work_case_ii(field, curve)
        assert res.value == pytest.approx(0.5, abs=1e-12)


class TestCaseIII:
    def test_unit_s(self):
        field = ForceField.from_text("0", "0", "1")
        curve = ParamCurve.from_text("t", "0", "5", 0, 1)
        assert work_case_iii(field, curve).value == pytest.approx(1.0, abs=1e-12)

    def test_linear_s(self):
        field = ForceField.from_text("0", "0", "x+y")
        curve = ParamCurve.from_text("t", "0", "5", 0, 1)
        assert work_case_iii(field, curve).value == pytest.approx(0.5, abs=1e-12)

    def test_overlap_value_zero_under_both(self):
        # x'+y' = 0 too: formula value is 0, and the dispatcher sends the pair
        # to Case I (collinear) with the same value
        field = ForceField.from_text("0", "0", "1")
        curve = ParamCurve.from_text("0", "0", "t", 0, 1)
        assert work_case_iii(field, curve).value == 0.0
        assert work(field, curve).value == 0.0


class TestCaseIV:
    def test_one_sixth(self):
        field, curve = fixed_case_iv_pair()
        res = work_case_iv(field, curve)
        assert res.value == pytest.approx(1.0 / 6.0, abs=1e-12)
        assert res.method is WorkMethod.CASE_IV_GENERAL

    def test_zero_numerator_on_collinear(self):
        field = ForceField.from_text("1", "1", "-1/2")
        curve = ParamCurve.from_text("t", "t", "-t/2", 0, 1)
        assert work_case_iv(field, curve).value == pytest.approx(0.0, abs=1e-13)

    def test_scaled_instance_against_direct(self):
        field = ForceField.from_text("2", "1", "-2/3")
        curve = ParamCurve.from_text("t", "2*t", "-2*t/3", 0, 1)
        res = work_case_iv(field, curve)
        direct = work_direct(field, curve)
        assert res.value == pytest.approx(1.0, abs=1e-12)
        assert res.value == pytest.approx(direct.value, abs=1e-12)

    def test_near_singular_falls_back_to_direct(self):
        # P + R = 0 along the curve: the case-IV denominator vanishes
        field = ForceField.from_text("0", "0", "1")
        curve = ParamCurve.from_text("t", "0", "5", 0, 1)
        res = work_case_iv(field, curve)
        assert "case_iv_near_singular_fallback" in res.flags
        assert res.method is WorkMethod.DIRECT_QUADRATURE
        assert res.value == pytest.approx(1.0, abs=1e-12)


class TestDispatcher:
    def test_collinear_exact_zero(self):
        field = ForceField.from_text("1", "1", "-1/2")
        curve = ParamCurve.from_text("t", "t", "-t/2", 0, 1)
        res = work(field, curve)
        assert res.value == 0.0
        assert res.method is WorkMethod.CASE_I_COLLINEAR
        assert res.case_assumption_residual <= 1e-9

    def test_case_iv_with_cross_check(self):
        field, curve = fixed_case_iv_pair()
        res = work(field, curve)
        assert res.value == pytest.approx(1.0 / 6.0, abs=1e-10)
        assert res.method is WorkMethod.CASE_IV_GENERAL
        assert res.cross_check_delta is not None
        assert res.cross_check_delta <= 10.0 * res.error_estimate + 1e-12

    def test_case_iii_dispatch(self):
        field = ForceField.from_text("0", "0", "1")
        curve = ParamCurve.from_text("t", "0", "5", 0, 1)
        res = work(field, curve)
        assert res.value == pytest.approx(1.0, abs=1e-12)
        assert res.method is WorkMethod.CASE_III_PR_ZERO

    def test_randomized_cases_cross_checked(self):
        rng = np.random.default_rng(17)
        for make, tag in ((make_case_iv_instance, WorkMethod.CASE_IV_GENERAL),
                          (make_case_ii_instance, WorkMethod.CASE_II_DXDY_ZERO),
                          (make_case_iii_instance, WorkMethod.CASE_III_PR_ZERO)):
            for _ in range(5):
                field, curve = make(rng)
                res = work(field, curve)
                assert res.method is tag
                direct = work_direct(field, curve)
                assert abs(res.value - direct.value) <= 10.0 * (
                    res.error_estimate + direct.error_estimate)

    def test_collinear_random_pairs(self):
        rng = np.random.default_rng(23)
        for _ in range(10):
            field, curve = make_collinear_pair(rng)
            res = work(field, curve)
            assert res.value == 0.0
            assert res.method is WorkMethod.CASE_I_COLLINEAR

    def test_orientation_reversal(self):
        field, curve = fixed_case_iv_pair()
        fwd = work(field, curve)
        bwd = work(field, curve.reversed())
        assert bwd.value == pytest.approx(-fwd.value, abs=1e-10)

    def test_linearity(self):
        field, curve = fixed_case_iv_pair()
        base = work(field, curve)
        scaled = work(field.scaled(-2.0), curve)
        assert scaled.value == pytest.approx(-2.0 * base.value, abs=1e-10)

    def test_diagnose_does_not_raise(self):
        field = ForceField.from_text("1", "1", "1")
        curve = ParamCurve.from_text("t", "t", "t", 0, 1)
        diag = diagnose(field, curve)
        assert not diag.isotropic
        assert diag.force_residual > 1e-8
