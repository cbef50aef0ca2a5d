"""Postprocessing of eigenvalue spectra: ratio tables and harmonicity.

A ratio table rescales a spectrum so one chosen mode sits at a chosen
value.  Two conventions matter in practice: the unloaded membrane is
normalized to its own lowest mode at 1, while loaded membranes are
normalized to the mode with one nodal diameter at 2 — the scale on which
a harmonic drum shows integer overtones and the loaded fundamental lands
near 1.07.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .shooting import EigenResult, ModeId

__all__ = [
    "RatioEntry",
    "RatioTable",
    "HarmonicityReport",
    "AudibilityEntry",
    "AudibilityReport",
    "ratio_table",
    "harmonicity",
    "audibility",
]


@dataclass(frozen=True)
class RatioEntry:
    mode: ModeId
    kappa: float
    ratio: float


@dataclass(frozen=True)
class RatioTable:
    """Spectrum normalized so `base_mode` maps exactly to `base_value`."""

    entries: tuple[RatioEntry, ...]
    base_mode: ModeId
    base_value: float

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def ratio(self, mode: ModeId) -> float:
        for entry in self.entries:
            if entry.mode == mode:
                return entry.ratio
        raise KeyError(f"mode {mode} not present in the table")

    def modes(self) -> list[ModeId]:
        return [entry.mode for entry in self.entries]


def ratio_table(
    spectrum: Sequence[EigenResult], base_mode: ModeId, base_value: float
) -> RatioTable:
    """ratio(mode) = base_value * kappa(mode) / kappa(base_mode), sorted by kappa."""
    if base_value <= 0:
        raise ValueError(f"base value must be positive, got {base_value}")
    kappas = {res.mode: res.kappa for res in spectrum}
    if base_mode not in kappas:
        raise KeyError(f"base mode {base_mode} not present in the spectrum")
    base_kappa = kappas[base_mode]
    ordered = sorted(spectrum, key=lambda res: res.kappa)
    # the base mode is pinned exactly, and the grouping makes a change of
    # base value an exact rescaling of every entry
    entries = tuple(
        RatioEntry(
            mode=res.mode,
            kappa=res.kappa,
            ratio=base_value if res.mode == base_mode else base_value * (res.kappa / base_kappa),
        )
        for res in ordered
    )
    return RatioTable(entries=entries, base_mode=base_mode, base_value=base_value)


@dataclass(frozen=True)
class HarmonicityReport:
    """Per-mode deviation of each ratio from its target (nearest integer by default)."""

    deviations: dict[ModeId, float]
    rms: float
    targets: dict[ModeId, float]

    def max_deviation(self) -> float:
        return max(self.deviations.values())


def harmonicity(
    table: RatioTable,
    modes: Iterable[ModeId] | None = None,
    targets: Mapping[ModeId, float] | None = None,
    include_base: bool = True,
) -> HarmonicityReport:
    """Deviations |ratio - target| over a mode subset, and their RMS.

    Without explicit targets each ratio is compared against its nearest
    integer.  Set include_base=False to drop the base mode (whose ratio is
    pinned by construction) from the statistics.
    """
    selected = list(modes) if modes is not None else table.modes()
    if not include_base:
        selected = [mode for mode in selected if mode != table.base_mode]
    if not selected:
        raise ValueError("empty mode subset")
    devs: dict[ModeId, float] = {}
    used: dict[ModeId, float] = {}
    for mode in selected:
        ratio = table.ratio(mode)
        target = float(targets[mode]) if targets is not None else float(round(ratio))
        devs[mode] = abs(ratio - target)
        used[mode] = target
    rms = math.sqrt(sum(d * d for d in devs.values()) / len(devs))
    return HarmonicityReport(deviations=devs, rms=rms, targets=used)


@dataclass(frozen=True)
class AudibilityEntry:
    mode: ModeId
    deviation_hz: float
    verdict: str  # "inaudible" | "marginal" | "audible"


@dataclass(frozen=True)
class AudibilityReport:
    fundamental_hz: float
    threshold_hz: tuple[float, float]
    entries: tuple[AudibilityEntry, ...]

    def verdict(self, mode: ModeId) -> str:
        for entry in self.entries:
            if entry.mode == mode:
                return entry.verdict
        raise KeyError(f"mode {mode} not present in the report")


def audibility(
    report: HarmonicityReport,
    fundamental_hz: float,
    threshold_hz: tuple[float, float] = (6.0, 7.0),
) -> AudibilityReport:
    """Convert ratio deviations to Hz at a given fundamental and classify them.

    A deviation is audible above the threshold band (the just-noticeable
    frequency difference, 6-7 Hz), marginal inside it, inaudible below.
    """
    if fundamental_hz <= 0:
        raise ValueError(f"fundamental must be positive, got {fundamental_hz}")
    low, high = threshold_hz
    if not 0 <= low <= high:
        raise ValueError(f"threshold band must satisfy 0 <= low <= high, got {threshold_hz}")
    entries = []
    for mode in sorted(report.deviations):
        hz = report.deviations[mode] * fundamental_hz
        if hz > high:
            verdict = "audible"
        elif hz >= low:
            verdict = "marginal"
        else:
            verdict = "inaudible"
        entries.append(AudibilityEntry(mode=mode, deviation_hz=hz, verdict=verdict))
    return AudibilityReport(
        fundamental_hz=fundamental_hz, threshold_hz=(low, high), entries=tuple(entries)
    )
