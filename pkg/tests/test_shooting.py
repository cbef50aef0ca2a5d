"""Eigenvalue search: initial data, boundary values, node counting, spectra."""

import dataclasses

import numpy as np
import pytest

from drummodes.ode import integrate
from drummodes.profiles import Scaled, StepRings, Uniform
from drummodes.shooting import (
    ModeId,
    NodeCountMismatch,
    NotEnoughRoots,
    SearchConfig,
    boundary_value,
    count_nodes,
    eigen_spectrum,
    find_eigenvalue,
    initial_conditions,
)
from drummodes.specfun import bessel_series, bessel_series_derivative, bessel_zero

UNIFORM = Uniform()


class TestModeId:
    def test_ordering_and_str(self):
        assert str(ModeId(2, 1)) == "(2,1)"
        assert ModeId(0, 0) < ModeId(1, 0)

    def test_parse(self):
        assert ModeId.parse("3,1") == ModeId(3, 1)
        assert ModeId.parse("(3,1)") == ModeId(3, 1)
        with pytest.raises(ValueError):
            ModeId.parse("3;1")
        with pytest.raises(ValueError):
            ModeId.parse("a,b")

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            ModeId(-1, 0)


class TestInitialConditions:
    def test_axisymmetric_values(self):
        state = initial_conditions(0, 1.0, UNIFORM, 1e-4)
        assert state.r == 1e-4
        assert state.R == pytest.approx(1.0 - 2.5e-9, abs=1e-15)
        assert state.dR == pytest.approx(-5e-5, abs=1e-12)

    def test_higher_order_tiny_but_positive(self):
        state = initial_conditions(2, 3.0, UNIFORM, 1e-4)
        x = 3.0 * 1e-4
        assert 0 < state.R == pytest.approx((x / 2) ** 2 / 2, rel=1e-6)
        assert state.dR > 0

    def test_zero_wavenumber_limit(self):
        state = initial_conditions(0, 0.0, UNIFORM, 1e-4)
        assert state.R == 1.0
        assert state.dR == 0.0

    def test_uses_centre_density(self):
        heavy = StepRings(rings=((0.5, 4.0), (1.0, 1.0)))
        state = initial_conditions(1, 2.0, heavy, 1e-4)
        k0 = 2.0 * 2.0  # k' * sqrt(rho(0))
        assert state.R == pytest.approx(bessel_series(1, k0 * 1e-4, 4), rel=1e-14)
        assert state.dR == pytest.approx(k0 * bessel_series_derivative(1, k0 * 1e-4, 4), rel=1e-14)

    def test_rejects_zero_start(self):
        with pytest.raises(ValueError):
            initial_conditions(0, 1.0, UNIFORM, 0.0)


class TestBoundaryValue:
    def test_vanishes_at_eigenvalue(self):
        assert abs(boundary_value(0, 2.404826, UNIFORM)) < 1e-4

    def test_matches_bessel_inside(self):
        assert boundary_value(0, 1.0, UNIFORM) == pytest.approx(0.7652, abs=1e-3)

    def test_sign_flip_across_first_zero(self):
        assert boundary_value(0, 2.3, UNIFORM) * boundary_value(0, 2.5, UNIFORM) < 0

    def test_rejects_nonpositive_trial(self):
        with pytest.raises(ValueError):
            boundary_value(0, 0.0, UNIFORM)


class TestCountNodes:
    def shoot(self, m, kprime):
        init = initial_conditions(m, kprime, UNIFORM, 1e-4)
        return integrate(m, kprime, UNIFORM, 1e-4, 1e-4, init)

    def test_fundamental_has_none(self):
        assert count_nodes(self.shoot(0, bessel_zero(0, 1))) == 0

    def test_second_axisymmetric_mode_has_one(self):
        assert count_nodes(self.shoot(0, bessel_zero(0, 2))) == 1

    def test_third_one_diameter_mode_has_two(self):
        assert count_nodes(self.shoot(1, bessel_zero(1, 3))) == 2


class TestFindEigenvalue:
    def test_fundamental(self):
        res = find_eigenvalue(ModeId(0, 0), UNIFORM)
        assert res.kappa == pytest.approx(2.4048, abs=1e-3)
        assert res.nodes_observed == 0
        assert abs(res.boundary_residual) < 1e-8

    def test_published_unloaded_ratios(self):
        base = find_eigenvalue(ModeId(0, 0), UNIFORM).kappa
        assert find_eigenvalue(ModeId(1, 0), UNIFORM).kappa / base == pytest.approx(1.59, abs=0.01)
        assert find_eigenvalue(ModeId(4, 0), UNIFORM).kappa / base == pytest.approx(3.16, abs=0.01)

    def test_radius_scaling(self):
        # kappa = k' * radius is independent of the radius
        big = Uniform(radius=2.0)
        res = find_eigenvalue(ModeId(0, 0), big, SearchConfig(h=1e-3))
        assert res.kappa == pytest.approx(bessel_zero(0, 1), abs=1e-3)

    def test_coarse_scan_recovers_by_refinement(self, coarse_config):
        # a 7-wide scan step straddles several roots at once; halving fixes it
        config = dataclasses.replace(coarse_config, k_step=7.0)
        res = find_eigenvalue(ModeId(0, 1), UNIFORM, config)
        assert res.kappa == pytest.approx(bessel_zero(0, 2), abs=1e-3)
        assert res.nodes_observed == 1

    def test_coarse_scan_without_refinement_raises(self, coarse_config):
        config = dataclasses.replace(coarse_config, k_step=7.0, max_refinements=0)
        with pytest.raises(NodeCountMismatch):
            find_eigenvalue(ModeId(0, 0), UNIFORM, config)

    def test_exhausted_range_raises(self, coarse_config):
        config = dataclasses.replace(coarse_config, k_max=2.0)
        with pytest.raises(NotEnoughRoots):
            find_eigenvalue(ModeId(0, 0), UNIFORM, config)


class TestEigenSpectrum:
    def test_uniform_low_modes(self, coarse_config):
        res = eigen_spectrum(UNIFORM, 2, 1, coarse_config)
        kappas = [r.kappa for r in res]
        expected = [2.405, 3.832, 5.136, 5.520, 7.016, 8.417]
        assert kappas == pytest.approx(expected, abs=1e-3)

    def test_sorted_by_kappa(self, rings_spectrum):
        kappas = [r.kappa for r in rings_spectrum]
        assert kappas == sorted(kappas)

    def test_node_counts_match_labels(self, uniform_spectrum):
        for res in uniform_spectrum:
            assert res.nodes_observed == res.mode.circles

    def test_error_annotated_with_mode_context(self, coarse_config):
        config = dataclasses.replace(coarse_config, k_max=5.0)
        with pytest.raises(NotEnoughRoots, match=r"nodal diameters"):
            eigen_spectrum(UNIFORM, 1, 1, config)

    def test_scope_guard(self):
        with pytest.raises(ValueError):
            eigen_spectrum(UNIFORM, 11, 0)
        with pytest.raises(ValueError):
            eigen_spectrum(UNIFORM, 0, 6)

    def test_deterministic(self, coarse_config):
        a = eigen_spectrum(UNIFORM, 1, 1, coarse_config)
        b = eigen_spectrum(UNIFORM, 1, 1, coarse_config)
        assert a == b


class TestSolverInvariants:
    def test_rim_residual_small_relative_to_trajectory(self, rings_spectrum, rings_profile):
        # the residual left by bisection is negligible against the mode's amplitude
        for res in rings_spectrum[:6]:
            kprime = res.kappa / rings_profile.radius
            init = initial_conditions(res.mode.diameters, kprime, rings_profile, 1e-4)
            traj = integrate(res.mode.diameters, kprime, rings_profile, 1e-4, 1e-4, init)
            assert abs(res.boundary_residual) < 1e-8 * np.max(np.abs(traj.R))

    def test_uniform_spectrum_matches_zeros_over_full_scope(self):
        # every in-scope mode (diameters <= 10, circles <= 5) against the zeros
        spectrum = eigen_spectrum(UNIFORM, 10, 5)
        assert len(spectrum) == 66
        for res in spectrum:
            zero = bessel_zero(res.mode.diameters, res.mode.circles + 1)
            assert res.kappa == pytest.approx(zero, abs=1e-3)
            assert res.nodes_observed == res.mode.circles


class TestDensityScaling:
    @pytest.mark.parametrize("s", [0.25, 4.0])
    def test_kappa_scales_inverse_sqrt(self, s, rings_profile, coarse_config):
        scaled = Scaled(rings_profile, s)
        for mode in (ModeId(0, 0), ModeId(1, 0), ModeId(2, 1)):
            kappa = find_eigenvalue(mode, rings_profile, coarse_config).kappa
            kappa_scaled = find_eigenvalue(mode, scaled, coarse_config).kappa
            assert kappa_scaled == pytest.approx(kappa / np.sqrt(s), rel=1e-6)
