"""Ratio tables, harmonicity statistics, and the audibility conversion."""

import pytest

from drummodes.shooting import EigenResult, ModeId
from drummodes.spectrum import audibility, harmonicity, ratio_table


def synthetic_spectrum(kappas: dict[ModeId, float]):
    return [
        EigenResult(mode=mode, kappa=kappa, nodes_observed=mode.circles, boundary_residual=0.0)
        for mode, kappa in kappas.items()
    ]


class TestRatioTable:
    def test_unloaded_published_values(self, uniform_spectrum):
        table = ratio_table(uniform_spectrum, ModeId(0, 0), 1.0)
        assert table.ratio(ModeId(1, 0)) == pytest.approx(1.59, abs=0.01)
        assert table.ratio(ModeId(0, 1)) == pytest.approx(2.30, abs=0.01)
        assert table.ratio(ModeId(4, 0)) == pytest.approx(3.16, abs=0.01)

    def test_base_mode_is_pinned_exactly(self, uniform_spectrum):
        table = ratio_table(uniform_spectrum, ModeId(1, 0), 2.0)
        assert table.ratio(ModeId(1, 0)) == 2.0

    def test_loaded_fundamental_near_published_value(self, continuous_spectrum):
        table = ratio_table(continuous_spectrum, ModeId(1, 0), 2.0)
        assert 1.02 <= table.ratio(ModeId(0, 0)) <= 1.12

    def test_missing_base_mode(self, uniform_spectrum):
        with pytest.raises(KeyError):
            ratio_table(uniform_spectrum, ModeId(9, 0), 1.0)

    def test_base_value_rescales_exactly(self, uniform_spectrum):
        ones = ratio_table(uniform_spectrum, ModeId(0, 0), 1.0)
        threes = ratio_table(uniform_spectrum, ModeId(0, 0), 3.0)
        for a, b in zip(ones, threes):
            assert b.ratio == 3.0 * a.ratio

    def test_entries_sorted_by_kappa(self, rings_spectrum):
        table = ratio_table(rings_spectrum, ModeId(1, 0), 2.0)
        kappas = [entry.kappa for entry in table]
        assert kappas == sorted(kappas)

    def test_rejects_nonpositive_base_value(self, uniform_spectrum):
        with pytest.raises(ValueError):
            ratio_table(uniform_spectrum, ModeId(0, 0), 0.0)


class TestHarmonicity:
    def test_published_near_harmonic_rows(self):
        # four loaded overtones at 2.00, 2.98, 2.99, 4.00
        kappas = {
            ModeId(1, 0): 2.00,
            ModeId(2, 0): 2.98,
            ModeId(0, 1): 2.99,
            ModeId(3, 0): 4.00,
        }
        table = ratio_table(synthetic_spectrum(kappas), ModeId(1, 0), 2.0)
        report = harmonicity(table)
        assert report.deviations[ModeId(1, 0)] == 0.0
        assert report.deviations[ModeId(2, 0)] == pytest.approx(0.02)
        assert report.deviations[ModeId(0, 1)] == pytest.approx(0.01)
        assert report.deviations[ModeId(3, 0)] == 0.0
        assert report.rms == pytest.approx(0.0112, abs=1e-4)

    def test_all_integers_give_zero(self):
        kappas = {ModeId(1, 0): 2.0, ModeId(2, 0): 3.0, ModeId(0, 1): 4.0}
        table = ratio_table(synthetic_spectrum(kappas), ModeId(1, 0), 2.0)
        assert harmonicity(table).rms == 0.0

    def test_uniform_membrane_is_aharmonic(self, uniform_spectrum):
        table = ratio_table(uniform_spectrum, ModeId(1, 0), 2.0)
        modes = [ModeId(1, 0), ModeId(2, 0), ModeId(0, 1), ModeId(3, 0)]
        assert harmonicity(table, modes=modes).rms > 0.2

    def test_deviations_bounded_by_half(self, rings_spectrum):
        table = ratio_table(rings_spectrum, ModeId(1, 0), 2.0)
        report = harmonicity(table)
        assert all(0.0 <= d <= 0.5 for d in report.deviations.values())
        assert report.rms <= report.max_deviation()

    def test_exclude_base(self):
        kappas = {ModeId(1, 0): 2.2, ModeId(2, 0): 3.0}
        table = ratio_table(synthetic_spectrum(kappas), ModeId(1, 0), 2.0)
        full = harmonicity(table)
        without = harmonicity(table, include_base=False)
        assert ModeId(1, 0) in full.deviations
        assert ModeId(1, 0) not in without.deviations

    def test_explicit_targets(self):
        kappas = {ModeId(1, 0): 2.0, ModeId(2, 0): 2.6}
        table = ratio_table(synthetic_spectrum(kappas), ModeId(1, 0), 2.0)
        report = harmonicity(table, targets={ModeId(1, 0): 2.0, ModeId(2, 0): 3.0})
        assert report.deviations[ModeId(2, 0)] == pytest.approx(0.4)

    def test_empty_subset_rejected(self):
        kappas = {ModeId(1, 0): 2.0}
        table = ratio_table(synthetic_spectrum(kappas), ModeId(1, 0), 2.0)
        with pytest.raises(ValueError):
            harmonicity(table, modes=[], include_base=False)


class TestAudibility:
    def make_report(self, deviations: dict[ModeId, float]):
        kappas = {mode: round(2.0 + i) + dev for i, (mode, dev) in enumerate(deviations.items())}
        # build directly: deviations are what matters
        table = ratio_table(synthetic_spectrum({ModeId(1, 0): 2.0, **kappas}), ModeId(1, 0), 2.0)
        return harmonicity(table, modes=list(deviations))

    def test_published_examples(self):
        report = self.make_report({ModeId(2, 0): 0.01})
        heard = audibility(report, fundamental_hz=240.0)
        entry = heard.entries[0]
        assert entry.deviation_hz == pytest.approx(2.4)
        assert entry.verdict == "inaudible"

    def test_zero_deviation_inaudible(self):
        report = self.make_report({ModeId(2, 0): 0.0})
        heard = audibility(report, fundamental_hz=240.0)
        assert heard.entries[0].verdict == "inaudible"
        assert heard.entries[0].deviation_hz == 0.0

    def test_large_deviation_audible(self):
        report = self.make_report({ModeId(2, 0): 0.05})
        heard = audibility(report, fundamental_hz=240.0)
        assert heard.entries[0].deviation_hz == pytest.approx(12.0)
        assert heard.entries[0].verdict == "audible"

    def test_marginal_band(self):
        report = self.make_report({ModeId(2, 0): 0.027})
        heard = audibility(report, fundamental_hz=240.0)  # 6.48 Hz, inside [6, 7]
        assert heard.entries[0].verdict == "marginal"

    def test_verdict_lookup(self):
        report = self.make_report({ModeId(2, 0): 0.0})
        heard = audibility(report, fundamental_hz=240.0)
        assert heard.verdict(ModeId(2, 0)) == "inaudible"
        with pytest.raises(KeyError):
            heard.verdict(ModeId(9, 9))

    def test_validation(self):
        report = self.make_report({ModeId(2, 0): 0.0})
        with pytest.raises(ValueError):
            audibility(report, fundamental_hz=0.0)
        with pytest.raises(ValueError):
            audibility(report, fundamental_hz=240.0, threshold_hz=(7.0, 6.0))
