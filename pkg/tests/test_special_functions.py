import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lomnitz.special_functions import (
    ConvergenceError,
    PoleError,
    gamma,
    log_ml,
    mittag_leffler,
    _mittag_leffler_deriv,
    _ml_arrays,
)


def ml_reference(nu, x, dps=120):
    """Independent oracle: straight partial-sum summation of the defining
    series in extended precision, with precision sized from the peak term."""
    kpeak = max(1.0, abs(x) ** (1.0 / nu) / nu) if x != 0 else 1.0
    ln_peak = kpeak * math.log(max(abs(x), 1.0)) - math.lgamma(nu * kpeak + 1.0)
    dps = max(dps, int(ln_peak / math.log(10.0)) + 30)
    with mpmath.workdps(dps):
        s = mpmath.mpf(0)
        xm = mpmath.mpf(x)
        k = 0
        while True:
            term = xm**k / mpmath.gamma(mpmath.mpf(nu) * k + 1)
            s += term
            k += 1
            if k > kpeak + 20 and abs(term) < mpmath.mpf(10) ** (-(dps - 10)):
                break
            assert k < 500_000
        return float(s)


class TestGamma:
    def test_integers(self):
        assert gamma(1.0) == pytest.approx(1.0, abs=1e-14)
        assert gamma(2.0) == pytest.approx(1.0, abs=1e-14)
        assert gamma(5.0) == pytest.approx(24.0, rel=1e-13)

    def test_half_integer_closed_form(self):
        # Gamma(1.5) = sqrt(pi)/2
        assert gamma(1.5) == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-13)

    def test_against_stdlib_on_positive_axis(self):
        xs = np.concatenate(
            [
                np.linspace(1e-3, 0.5, 500, endpoint=False),
                np.linspace(0.5, 50.0, 5000),
            ]
        )
        for x in xs:
            assert gamma(float(x)) == pytest.approx(math.gamma(float(x)), rel=1e-12)

    def test_reflection_negative_axis(self):
        for x in [-0.5, -1.3, -2.7, -5.25, -10.9]:
            assert gamma(x) == pytest.approx(math.gamma(x), rel=1e-11)

    def test_poles(self):
        for x in [0.0, -1.0, -2.0, -17.0]:
            with pytest.raises(PoleError):
                gamma(x)


class TestMittagLeffler:
    def test_value_at_zero_is_exactly_one(self):
        for nu in [0.1, 0.25, 0.5, 0.75, 0.99, 1.0]:
            assert mittag_leffler(nu, 0.0) == 1.0

    def test_order_one_is_exp(self):
        for x in np.linspace(-30.0, 5.0, 141):
            assert mittag_leffler(1.0, float(x)) == pytest.approx(
                math.exp(float(x)), rel=1e-12, abs=1e-300
            )

    def test_half_order_closed_form(self):
        # E_{1/2}(-y) = exp(y^2) erfc(y)
        for y in [0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 6.0, 10.0, 20.0, 50.0]:
            ref = float(mpmath.exp(y * y) * mpmath.erfc(y))
            assert mittag_leffler(0.5, -y) == pytest.approx(ref, abs=1e-10)

    def test_spec_point_half_minus_one(self):
        # frozen from the series oracle; equals e * erfc(1)
        assert mittag_leffler(0.5, -1.0) == pytest.approx(0.4275835761558070, abs=1e-10)
        assert mittag_leffler(0.5, -1.0) == pytest.approx(
            math.exp(1.0) * math.erfc(1.0), abs=1e-12
        )

    @pytest.mark.parametrize("nu", [0.25, 0.4, 0.75, 0.9])
    @pytest.mark.parametrize("y", [0.3, 1.0, 2.5, 5.0, 5.5, 6.5, 8.0, 12.0])
    def test_against_series_oracle(self, nu, y):
        kpeak = y ** (1.0 / nu) / nu
        ln_peak = kpeak * math.log(max(y, 1.0)) - math.lgamma(nu * kpeak + 1.0)
        if kpeak > 3000 or ln_peak > 250:
            pytest.skip("series oracle too expensive here")
        assert mittag_leffler(nu, -y) == pytest.approx(ml_reference(nu, -y), abs=1e-10)

    def test_bounds_and_monotonicity_negative_axis(self):
        lattice = -np.concatenate([np.linspace(0.0, 5.0, 21), [8.0, 15.0, 30.0, 50.0]])
        for nu in [0.25, 0.5, 0.75, 1.0]:
            vals = [mittag_leffler(nu, float(x)) for x in lattice]
            assert all(0.0 < v <= 1.0 for v in vals)
            assert all(a >= b - 1e-14 for a, b in zip(vals, vals[1:]))

    def test_large_argument_asymptotics(self):
        # E_nu(-y) * Gamma(1 - nu) * y -> 1
        for nu in [0.25, 0.5, 0.75]:
            v = mittag_leffler(nu, -1e3) * math.gamma(1.0 - nu) * 1e3
            assert v == pytest.approx(1.0, rel=0.05)

    def test_domain_validation(self):
        with pytest.raises(ValueError):
            mittag_leffler(0.0, -1.0)
        with pytest.raises(ValueError):
            mittag_leffler(1.2, -1.0)
        with pytest.raises(ValueError):
            mittag_leffler(0.5, math.inf)
        with pytest.raises(ConvergenceError):
            mittag_leffler(0.25, 6.0)  # value overflows double precision

    @settings(max_examples=60, deadline=None)
    @given(
        nu=st.floats(min_value=0.05, max_value=1.0),
        y=st.floats(min_value=0.0, max_value=50.0),
    )
    def test_property_bounds(self, nu, y):
        v = mittag_leffler(nu, -y)
        assert 0.0 < v <= 1.0

    def test_derivative_against_series_oracle(self):
        for nu in [0.3, 0.5, 0.75]:
            for x in [-0.2, -1.0, -3.0]:
                with mpmath.workdps(60):
                    s = mpmath.mpf(0)
                    for k in range(1, 500):
                        s += k * mpmath.mpf(x) ** (k - 1) / mpmath.gamma(
                            mpmath.mpf(nu) * k + 1
                        )
                    ref = float(s)
                assert _mittag_leffler_deriv(nu, x) == pytest.approx(ref, abs=1e-10)
                # finite differences agree at their own noise level
                h = 1e-6
                fd = (mittag_leffler(nu, x + h) - mittag_leffler(nu, x - h)) / (2 * h)
                assert _mittag_leffler_deriv(nu, x) == pytest.approx(fd, rel=1e-4)


class TestLogMl:
    def test_at_zero(self):
        for nu in [0.25, 0.5, 0.75, 1.0]:
            assert log_ml(nu, 0.0) == 1.0

    def test_order_one_reduction(self):
        # E_{1,1}(-ln(1+t)) = 1/(1+t)
        for t in [0.1, 0.5, 1.0, 10.0, 1e4]:
            assert log_ml(1.0, t) == pytest.approx(1.0 / (1.0 + t), rel=1e-12)
        assert log_ml(1.0, 1.0) == pytest.approx(0.5, rel=1e-13)

    def test_reduces_to_ml_at_matching_argument(self):
        # ln(e) = 1 so log_ml(0.5, e-1) = E_{1/2}(-1)
        assert log_ml(0.5, math.e - 1.0) == pytest.approx(
            mittag_leffler(0.5, -1.0), rel=1e-13
        )

    def test_decreasing_with_values_in_unit_interval(self):
        ts = np.logspace(-3, 6, 40)
        for nu in [0.25, 0.5, 0.75, 1.0]:
            vals = [log_ml(nu, float(t)) for t in ts]
            assert all(0.0 < v <= 1.0 for v in vals)
            assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError):
            log_ml(0.5, -0.1)


class TestArrayHelper:
    def test_matches_scalar_calls(self):
        xs = -np.linspace(0.0, 2.5, 31)
        for nu in [0.25, 0.5, 0.75, 1.0]:
            val, der = _ml_arrays(nu, xs)
            for i, x in enumerate(xs):
                assert val[i] == pytest.approx(mittag_leffler(nu, float(x)), abs=1e-12)
                assert der[i] == pytest.approx(
                    _mittag_leffler_deriv(nu, float(x)), abs=1e-12
                )

    def test_elementwise_fallback_for_large_arguments(self):
        xs = np.array([-0.5, -9.0, -20.0])
        val, _ = _ml_arrays(0.5, xs)
        for i, x in enumerate(xs):
            assert val[i] == pytest.approx(mittag_leffler(0.5, float(x)), abs=1e-12)
