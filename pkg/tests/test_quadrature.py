import math

import numpy as np
import pytest

from isowork.errors import DomainError
from isowork.exprlang import evaluate, parse
from isowork.quadrature import MAX_DEPTH, BatchIntegrand, integrate


class TestBasics:
    def test_linear(self):
        res = integrate(lambda t: t, 0.0, 1.0, tol=1e-12)
        assert abs(res.value - 0.5) <= 1e-15
        assert res.converged

    def test_cos_quarter_period(self):
        res = integrate(lambda t: math.cos(t), 0.0, math.pi / 2, tol=1e-12)
        assert res.value == pytest.approx(1.0, abs=1e-12)

    def test_constant(self):
        res = integrate(lambda t: 1.0, -2.5, 4.75)
        assert res.value == pytest.approx(7.25, abs=1e-15 * 7.25)

    def test_bad_interval(self):
        with pytest.raises(ValueError):
            integrate(lambda t: t, 1.0, 0.0)
        with pytest.raises(ValueError):
            integrate(lambda t: t, 0.0, 1.0, tol=0.0)


class TestPolynomialExactness:
    @pytest.mark.parametrize("degree", list(range(30)))
    def test_monomials_no_refinement(self, degree):
        res = integrate(lambda t: t ** degree, 0.0, 1.0, tol=1e-12)
        assert abs(res.value - 1.0 / (degree + 1)) <= 1e-15
        assert res.nodes_used == 45  # whole + two halves, nothing more


class TestAdaptivity:
    def test_needs_refinement(self):
        # narrow spike forces panel splitting
        res = integrate(lambda t: math.exp(-1000.0 * (t - 0.3) ** 2),
                        0.0, 1.0, tol=1e-12)
        exact = math.sqrt(math.pi / 1000.0)  # tails are ~1e-44, negligible
        assert res.value == pytest.approx(exact, rel=1e-11)
        assert res.nodes_used > 45
        assert res.converged

    def test_depth_cap_flags_not_converged(self):
        step = lambda t: 1.0 if t > 1.0 / 3.0 else 0.0
        res = integrate(step, 0.0, 1.0, tol=1e-15)
        assert not res.converged
        assert res.value == pytest.approx(2.0 / 3.0, abs=1e-6)
        assert res.error_estimate > 1e-15

    def test_depth_cap_is_24(self):
        assert MAX_DEPTH == 24


class TestProperties:
    def test_linearity(self):
        a, b = 3.1, -0.7
        rf = integrate(lambda t: math.sin(t), 0.0, 2.0)
        rg = integrate(lambda t: t ** 3, 0.0, 2.0)
        rfg = integrate(lambda t: a * math.sin(t) + b * t ** 3, 0.0, 2.0)
        allowed = 2.0 * (rfg.error_estimate + abs(a) * rf.error_estimate
                         + abs(b) * rg.error_estimate)
        assert abs(rfg.value - (a * rf.value + b * rg.value)) <= allowed

    def test_interval_additivity(self):
        f = lambda t: math.exp(-t) * math.cos(5 * t)
        whole = integrate(f, 0.0, 2.0)
        left = integrate(f, 0.0, 0.83)
        right = integrate(f, 0.83, 2.0)
        allowed = (whole.error_estimate + left.error_estimate
                   + right.error_estimate)
        assert abs(whole.value - left.value - right.value) <= allowed

    def test_batch_matches_scalar(self):
        scalar = integrate(lambda t: math.cos(t), 0.0, 1.5)
        batch = integrate(BatchIntegrand(np.cos), 0.0, 1.5)
        assert scalar.value == pytest.approx(batch.value, abs=1e-15)

    def test_domain_error_propagates(self):
        e = parse("log(t)")
        with pytest.raises(DomainError):
            integrate(lambda t: evaluate(e, {"t": t}), -1.0, 1.0)
