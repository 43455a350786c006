import math

import numpy as np
import pytest

from lomnitz.creep import MaterialParameters
from lomnitz.laplace import (
    HorizonError,
    LaplaceProbe,
    check_laplace_identity,
    laplace_of_sampled,
)
from lomnitz.relaxation import SampledFunction, UniformGrid, solve_relaxation


def sampled(fn, h, n, label=""):
    g = UniformGrid(h, n)
    return SampledFunction(g, np.array([fn(t) for t in g.times]), label=label)


class TestLaplaceOfSampled:
    def test_constant_closed_form(self):
        f = sampled(lambda t: 1.0, 0.1, 300)
        for s in [0.5, 1.0, 3.0]:
            expected = (1.0 - math.exp(-s * 30.0)) / s
            assert laplace_of_sampled(f, s) == pytest.approx(expected, rel=1e-12)

    def test_ramp_closed_form(self):
        # the interpolant is exact on f(t) = t; transform ~ 1/s^2 for s T >> 1
        f = sampled(lambda t: t, 0.01, 3000)
        got = laplace_of_sampled(f, 1.0)
        exact = 1.0 - math.exp(-30.0) * 31.0
        assert got == pytest.approx(exact, rel=1e-12)
        assert got == pytest.approx(1.0, abs=1e-3)

    def test_zero_function(self):
        f = sampled(lambda t: 0.0, 0.1, 50)
        assert laplace_of_sampled(f, 2.0) == 0.0

    def test_exponential_against_quadrature(self):
        f = sampled(lambda t: math.exp(-t), 0.005, 8000)
        for s in [0.5, 2.0]:
            exact = (1.0 - math.exp(-(s + 1.0) * 40.0)) / (s + 1.0)
            assert laplace_of_sampled(f, s) == pytest.approx(exact, rel=1e-5)

    def test_stability_gate(self):
        f = sampled(lambda t: 1.0, 2.0, 100)
        with pytest.raises(ValueError, match="s\\*h"):
            laplace_of_sampled(f, 6.0)

    def test_probe_diagnostics(self):
        f = sampled(lambda t: 1.0 / (1.0 + t), 0.1, 300)
        probe = LaplaceProbe.for_sampled(f, 1.0)
        assert probe.truncation_T == pytest.approx(30.0)
        assert probe.tail_estimate == pytest.approx(
            (1.0 / 31.0) * math.exp(-30.0), rel=1e-12
        )


class TestIdentity:
    def test_classical_residuals(self):
        p = MaterialParameters(nu=1.0)
        rep = solve_relaxation(p, UniformGrid(0.01, 3000))
        res = check_laplace_identity(p, rep.solution, [0.5, 1.0, 2.0, 5.0])
        assert np.all(res <= 2e-2)

    def test_residual_decreases_under_refinement(self):
        p = MaterialParameters(nu=1.0)
        coarse = solve_relaxation(p, UniformGrid(0.02, 1500))
        fine = solve_relaxation(p, UniformGrid(0.01, 3000))
        probes = [0.5, 1.0, 2.0, 5.0]
        r_coarse = check_laplace_identity(p, coarse.solution, probes)
        r_fine = check_laplace_identity(p, fine.solution, probes)
        assert np.all(r_fine < r_coarse)

    def test_initial_value_limit(self):
        # s phi~(s) -> phi(0) = 1; at s = 100 the probe sits in [0.9, 1.0]
        for nu in [0.75, 1.0]:
            p = MaterialParameters(nu=nu)
            rep = solve_relaxation(p, UniformGrid(0.01, 3000))
            v = 100.0 * laplace_of_sampled(rep.solution, 100.0)
            assert 0.9 <= v <= 1.0

    def test_transforms_positive_decreasing_in_s(self):
        p = MaterialParameters(nu=1.0)
        rep = solve_relaxation(p, UniformGrid(0.01, 3000))
        psi = sampled(
            lambda t: p.q * math.log1p(t), 0.01, 3000
        )
        probes = [0.5, 1.0, 2.0, 5.0]
        phis = [laplace_of_sampled(rep.solution, s) for s in probes]
        psis = [laplace_of_sampled(psi, s) for s in probes]
        assert all(v > 0 for v in phis + psis)
        assert all(a > b for a, b in zip(phis, phis[1:]))
        assert all(a > b for a, b in zip(psis, psis[1:]))

    def test_horizon_gate(self):
        p = MaterialParameters(nu=1.0)
        rep = solve_relaxation(p, UniformGrid(0.01, 500))  # T = 5
        with pytest.raises(HorizonError):
            check_laplace_identity(p, rep.solution, [0.5])

    def test_fractional_orders_consistent(self):
        for nu in [0.5, 0.75]:
            p = MaterialParameters(nu=nu)
            rep = solve_relaxation(p, UniformGrid(0.01, 3000))
            res = check_laplace_identity(p, rep.solution, [1.0, 2.0])
            assert np.all(res <= 5e-2)
