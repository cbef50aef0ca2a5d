"""Density profile construction, evaluation, sampling, and (de)serialization."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drummodes.profiles import (
    ContinuousLogExp,
    MembraneSpec,
    Scaled,
    StepRings,
    Tabulated,
    Uniform,
    builtin_profile,
    default_continuous,
    default_rings,
    dump_profile,
    load_profile,
    profile_samples,
)
from drummodes.shooting import ModeId, find_eigenvalue
from drummodes.specfun import bessel_zero


class TestMembraneSpec:
    def test_defaults(self):
        spec = MembraneSpec()
        assert spec.radius == 1.0 and spec.baseline_density == 1.0 and spec.tension == 1.0

    def test_rejects_varied_gauge(self):
        with pytest.raises(ValueError):
            MembraneSpec(baseline_density=2.0)
        with pytest.raises(ValueError):
            MembraneSpec(tension=0.5)
        with pytest.raises(ValueError):
            MembraneSpec(radius=0.0)


class TestUniform:
    def test_density_is_one(self):
        assert Uniform().density(0.37) == 1.0

    def test_samples(self):
        assert Uniform().samples(3) == [(0.0, 1.0), (0.5, 1.0), (1.0, 1.0)]

    def test_range_check(self):
        with pytest.raises(ValueError):
            Uniform().density(1.2)
        with pytest.raises(ValueError):
            Uniform().density(-0.1)


class TestStepRings:
    @pytest.fixture
    def two_rings(self):
        return StepRings(rings=((0.4, 5.0), (1.0, 1.0)))

    def test_lookup(self, two_rings):
        assert two_rings.density(0.2) == 5.0
        assert two_rings.density(0.7) == 1.0

    def test_boundary_belongs_to_inner_ring(self, two_rings):
        assert two_rings.density(0.4) == 5.0

    def test_samples(self, two_rings):
        values = [rho for _, rho in two_rings.samples(5)]
        assert values == [5.0, 5.0, 1.0, 1.0, 1.0]

    def test_validation(self):
        with pytest.raises(ValueError):
            StepRings(rings=((0.5, 2.0), (0.4, 1.0), (1.0, 1.0)))  # not increasing
        with pytest.raises(ValueError):
            StepRings(rings=((0.5, 2.0),))  # does not reach the rim
        with pytest.raises(ValueError):
            StepRings(rings=((0.5, -2.0), (1.0, 1.0)))  # negative density
        with pytest.raises(ValueError):
            StepRings(rings=())

    @settings(max_examples=40, deadline=None)
    @given(
        edges=st.lists(st.floats(min_value=0.01, max_value=0.99), min_size=1, max_size=4, unique=True),
        densities=st.lists(st.floats(min_value=0.1, max_value=20.0), min_size=5, max_size=5),
        r=st.floats(min_value=0.0, max_value=1.0),
    )
    def test_lookup_matches_containing_ring(self, edges, densities, r):
        edges = sorted(edges) + [1.0]
        rings = tuple(zip(edges, densities[: len(edges)]))
        profile = StepRings(rings=rings)
        expected = next(d for outer, d in rings if r <= outer)
        assert profile.density(r) == expected


class TestContinuousLogExp:
    def test_degenerate_is_uniform(self):
        profile = ContinuousLogExp(
            log_coeff=0.0, log_offset=1.0, log_pole=0.7, patch_radius=0.5,
            exp_coeff=0.0, exp_rate=1.0,
        )
        r = np.linspace(0.0, 1.0, 101)
        assert np.all(profile.density(r) == 1.0)

    def test_degenerate_spectrum_equals_uniform(self, coarse_config):
        degenerate = ContinuousLogExp(
            log_coeff=0.0, log_offset=1.0, log_pole=0.7, patch_radius=0.5,
            exp_coeff=0.0, exp_rate=1.0,
        )
        for mode in (ModeId(0, 0), ModeId(1, 0)):
            got = find_eigenvalue(mode, degenerate, coarse_config).kappa
            expected = bessel_zero(mode.diameters, mode.circles + 1)
            assert got == pytest.approx(expected, abs=2e-4)

    def test_clamp_keeps_patch_at_baseline(self):
        profile = ContinuousLogExp(
            log_coeff=2.0, log_offset=3.0, log_pole=0.8, patch_radius=0.7,
            exp_coeff=0.0, exp_rate=1.0,
        )
        # near the patch edge the log term goes negative; the clamp holds at 1
        assert profile.density(0.65) == 1.0
        assert profile.density(0.0) > 1.0

    def test_monotone_samples_without_exponential(self):
        profile = ContinuousLogExp(
            log_coeff=3.0, log_offset=9.0, log_pole=1.1, patch_radius=1.0,
            exp_coeff=0.0, exp_rate=0.0,
        )
        values = [rho for _, rho in profile.samples(64)]
        assert all(a >= b for a, b in zip(values, values[1:]))

    def test_patch_edge_jump_recorded(self):
        profile = ContinuousLogExp(
            log_coeff=3.0, log_offset=10.0, log_pole=0.9, patch_radius=0.5,
            exp_coeff=0.01, exp_rate=1.0,
        )
        inner = 3.0 * math.log(0.9 - 0.5) + 10.0
        outer = 1.0 + 0.01 * math.exp(0.5)
        assert profile.patch_edge_jump == pytest.approx(abs(outer - inner))

    def test_requires_pole_beyond_patch(self):
        with pytest.raises(ValueError):
            ContinuousLogExp(
                log_coeff=1.0, log_offset=1.0, log_pole=0.4, patch_radius=0.5,
                exp_coeff=0.0, exp_rate=1.0,
            )

    def test_rejects_nonpositive_density(self):
        with pytest.raises(ValueError):
            ContinuousLogExp(
                log_coeff=0.0, log_offset=1.0, log_pole=1.5, patch_radius=0.5,
                exp_coeff=-2.0, exp_rate=0.0,
            )


class TestTabulated:
    def test_interpolation(self):
        profile = Tabulated(radii=(0.0, 0.5, 1.0), densities=(4.0, 2.0, 1.0))
        assert profile.density(0.25) == pytest.approx(3.0)
        assert profile.density(0.75) == pytest.approx(1.5)

    def test_span_validation(self):
        with pytest.raises(ValueError):
            Tabulated(radii=(0.1, 1.0), densities=(1.0, 1.0))
        with pytest.raises(ValueError):
            Tabulated(radii=(0.0, 0.5), densities=(1.0, 1.0))
        with pytest.raises(ValueError):
            Tabulated(radii=(0.0, 0.5, 0.5, 1.0), densities=(1.0, 1.0, 1.0, 1.0))

    def test_positivity_enforced(self):
        with pytest.raises(ValueError):
            Tabulated(radii=(0.0, 0.5, 1.0), densities=(1.0, -0.5, 1.0))


class TestScaled:
    def test_scales_density(self):
        scaled = Scaled(default_rings(), 4.0)
        assert scaled.density(0.1) == pytest.approx(4.0 * default_rings().density(0.1))

    def test_radius_follows_base(self):
        assert Scaled(Uniform(radius=1.0), 2.0).radius == 1.0

    def test_rejects_nonpositive_factor(self):
        with pytest.raises(ValueError):
            Scaled(Uniform(), 0.0)


class TestSerialization:
    @pytest.mark.parametrize(
        "profile",
        [
            Uniform(),
            StepRings(rings=((0.3, 4.0), (1.0, 1.0))),
            default_continuous(),
            Tabulated(radii=(0.0, 0.4, 1.0), densities=(3.0, 2.0, 1.0)),
        ],
        ids=["uniform", "rings", "continuous", "tabulated"],
    )
    def test_round_trip(self, profile, tmp_path):
        path = tmp_path / "profile.json"
        dump_profile(profile, path)
        loaded = load_profile(path)
        r = np.linspace(0.0, 1.0, 257)
        assert np.allclose(loaded.density(r), profile.density(r), rtol=0, atol=0)

    def test_shipped_configs_match_builtins(self):
        for name, path in [
            ("default-continuous", "configs/default_continuous.json"),
            ("default-rings", "configs/default_rings.json"),
        ]:
            shipped = load_profile(path)
            builtin = builtin_profile(name)
            r = np.linspace(0.0, 1.0, 1001)
            assert np.array_equal(shipped.density(r), builtin.density(r))

    def test_unknown_variant_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"variant": "exotic"}))
        with pytest.raises(ValueError):
            load_profile(path)

    def test_unknown_builtin_rejected(self):
        with pytest.raises(ValueError):
            builtin_profile("nonexistent")


def test_profile_samples_alias():
    assert profile_samples(Uniform(), 3) == Uniform().samples(3)


def test_samples_need_two_points():
    with pytest.raises(ValueError):
        Uniform().samples(1)
