"""Radial density models for the loaded circular membrane.

Densities are dimensionless multiples of the unloaded baseline, which is
fixed to 1 together with the tension: only frequency ratios are ever
computed, so absolute scales are gauge freedom.  All profiles are
immutable after construction and evaluate on scalars or numpy arrays.

Profile files are JSON objects with a ``variant`` tag plus the variant's
parameters; see `load_profile` for the schema.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "MembraneSpec",
    "DensityProfile",
    "Uniform",
    "StepRings",
    "ContinuousLogExp",
    "Tabulated",
    "Scaled",
    "profile_samples",
    "default_continuous",
    "default_rings",
    "builtin_profile",
    "BUILTIN_PROFILES",
    "load_profile",
    "dump_profile",
]

_POSITIVITY_SAMPLES = 10_000


@dataclass(frozen=True)
class MembraneSpec:
    """Geometry and material constants. Baseline density and tension are pinned to 1."""

    radius: float = 1.0
    baseline_density: float = 1.0
    tension: float = 1.0

    def __post_init__(self) -> None:
        if self.radius <= 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if self.baseline_density != 1.0:
            raise ValueError("baseline density is fixed to 1 (ratios only)")
        if self.tension != 1.0:
            raise ValueError("tension is fixed to 1 (ratios only)")


class DensityProfile:
    """Base class: a density rho(r) on [0, radius], rho > 0."""

    radius: float = 1.0

    def density(self, r):
        """rho(r) for scalar or array r in [0, radius]."""
        raise NotImplementedError

    def samples(self, count: int) -> list[tuple[float, float]]:
        """`count` uniformly spaced (r, rho(r)) pairs over [0, radius], endpoints included."""
        if count < 2:
            raise ValueError(f"need at least 2 samples, got {count}")
        r = np.linspace(0.0, self.radius, count)
        rho = np.asarray(self.density(r), dtype=float)
        return list(zip(r.tolist(), rho.tolist()))

    def scaled(self, factor: float) -> "Scaled":
        return Scaled(self, factor)

    def _check_range(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if np.any(r < 0) or np.any(r > self.radius):
            raise ValueError(f"radius outside [0, {self.radius}]")
        return r

    def _check_positive(self) -> None:
        r = np.linspace(0.0, self.radius, _POSITIVITY_SAMPLES)
        rho = np.asarray(self.density(r))
        if not np.all(np.isfinite(rho)) or np.any(rho <= 0):
            raise ValueError("density must be positive and finite on [0, radius]")

    def _as_scalar(self, r, rho):
        return float(rho) if np.isscalar(r) or np.ndim(r) == 0 else rho


def profile_samples(profile: DensityProfile, count: int) -> list[tuple[float, float]]:
    """Module-level alias for `DensityProfile.samples`."""
    return profile.samples(count)


@dataclass(frozen=True)
class Uniform(DensityProfile):
    """The unloaded membrane: rho = 1 everywhere."""

    radius: float = 1.0

    def density(self, r):
        r = self._check_range(r)
        return self._as_scalar(r, np.ones_like(r))


@dataclass(frozen=True)
class StepRings(DensityProfile):
    """Piecewise-constant concentric rings.

    ``rings`` is an ordered list of (outer_radius, density); the last outer
    radius must equal the membrane radius.  A point on a ring boundary
    belongs to the inner ring.
    """

    rings: tuple[tuple[float, float], ...]
    radius: float = 1.0

    def __post_init__(self) -> None:
        rings = tuple((float(r), float(d)) for r, d in self.rings)
        object.__setattr__(self, "rings", rings)
        if not rings:
            raise ValueError("at least one ring is required")
        edges = [r for r, _ in rings]
        if any(b <= a for a, b in zip(edges, edges[1:])):
            raise ValueError(f"ring radii must be strictly increasing, got {edges}")
        if edges[0] <= 0:
            raise ValueError("first ring radius must be positive")
        if edges[-1] != self.radius:
            raise ValueError(f"last ring must end at the rim {self.radius}, got {edges[-1]}")
        if any(d <= 0 for _, d in rings):
            raise ValueError("ring densities must be positive")
        self._check_positive()

    def density(self, r):
        r = self._check_range(r)
        edges = np.array([e for e, _ in self.rings])
        dens = np.array([d for _, d in self.rings])
        idx = np.minimum(np.searchsorted(edges, r, side="left"), len(dens) - 1)
        return self._as_scalar(r, dens[idx])


@dataclass(frozen=True)
class ContinuousLogExp(DensityProfile):
    """Logarithmic central patch with an exponential correction outside it.

        rho(r) = max(1, log_coeff * ln(log_pole - r) + log_offset)   r <  patch_radius
        rho(r) = 1 + exp_coeff * exp(exp_rate * r)                   r >= patch_radius

    The clamp keeps the loaded patch at or above the bare membrane
    (loading only adds mass).  ``log_pole`` must exceed ``patch_radius``
    so the logarithm's argument stays positive on the patch.  The two
    branches need not meet; the jump at the patch edge is recorded in
    ``patch_edge_jump``.
    """

    log_coeff: float
    log_offset: float
    log_pole: float
    patch_radius: float
    exp_coeff: float
    exp_rate: float
    radius: float = 1.0
    patch_edge_jump: float = field(init=False, default=0.0)

    def __post_init__(self) -> None:
        if not 0 < self.patch_radius <= self.radius:
            raise ValueError(f"patch radius must lie in (0, {self.radius}]")
        if self.log_pole <= self.patch_radius:
            raise ValueError(
                f"log_pole ({self.log_pole}) must exceed patch_radius ({self.patch_radius})"
            )
        inner = max(1.0, self.log_coeff * np.log(self.log_pole - self.patch_radius) + self.log_offset)
        outer = 1.0 + self.exp_coeff * np.exp(self.exp_rate * self.patch_radius)
        object.__setattr__(self, "patch_edge_jump", float(abs(outer - inner)))
        self._check_positive()

    def density(self, r):
        r = self._check_range(r)
        gap = np.maximum(self.log_pole - r, np.finfo(float).tiny)
        patch = np.maximum(1.0, self.log_coeff * np.log(gap) + self.log_offset)
        outer = 1.0 + self.exp_coeff * np.exp(self.exp_rate * r)
        return self._as_scalar(r, np.where(r < self.patch_radius, patch, outer))


@dataclass(frozen=True)
class Tabulated(DensityProfile):
    """Linear interpolation through sorted (r, rho) samples spanning [0, radius]."""

    radii: tuple[float, ...]
    densities: tuple[float, ...]
    radius: float = 1.0

    def __post_init__(self) -> None:
        radii = tuple(float(r) for r in self.radii)
        dens = tuple(float(d) for d in self.densities)
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "densities", dens)
        if len(radii) != len(dens) or len(radii) < 2:
            raise ValueError("need matching radii/densities with at least 2 samples")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise ValueError("sample radii must be strictly increasing")
        if radii[0] != 0.0 or radii[-1] != self.radius:
            raise ValueError(f"samples must span [0, {self.radius}]")
        self._check_positive()

    def density(self, r):
        r = self._check_range(r)
        return self._as_scalar(r, np.interp(r, self.radii, self.densities))


@dataclass(frozen=True)
class Scaled(DensityProfile):
    """A profile multiplied by a constant factor; used for scaling-law checks."""

    base: DensityProfile
    factor: float

    def __post_init__(self) -> None:
        if self.factor <= 0:
            raise ValueError(f"scale factor must be positive, got {self.factor}")
        object.__setattr__(self, "radius", self.base.radius)

    def density(self, r):
        return self._as_scalar(r, self.factor * np.asarray(self.base.density(r)))


# Fitted parameter sets produced by the tuner against the integer targets
# {2, 3, 3, 4, 4, 5, 5, 5} (base mode (1,0) -> 2) and frozen as fixtures.
# With these, the lowest mode lands at ~1.07 on that scale and every
# target mode sits within 0.024 of its integer (inaudible at 240 Hz).
_DEFAULT_CONTINUOUS = dict(
    log_coeff=7.3499,
    log_offset=24.9725,
    log_pole=0.64179,
    patch_radius=0.60345,
    exp_coeff=0.00012,
    exp_rate=4.1241,
)
_DEFAULT_RINGS = ((0.3169, 10.2089), (0.5186, 7.4893), (1.0, 1.0663))


def default_continuous() -> ContinuousLogExp:
    """The shipped fitted log+exp loading (near-harmonic overtones)."""
    return ContinuousLogExp(**_DEFAULT_CONTINUOUS)


def default_rings() -> StepRings:
    """The shipped fitted three-ring loading (near-harmonic overtones)."""
    return StepRings(rings=_DEFAULT_RINGS)


BUILTIN_PROFILES = {
    "uniform": Uniform,
    "default-continuous": default_continuous,
    "default-rings": default_rings,
}


def builtin_profile(name: str) -> DensityProfile:
    try:
        return BUILTIN_PROFILES[name]()
    except KeyError:
        raise ValueError(
            f"unknown built-in profile {name!r}; expected one of {sorted(BUILTIN_PROFILES)}"
        ) from None


def _profile_to_dict(profile: DensityProfile) -> dict:
    if isinstance(profile, Uniform):
        return {"variant": "uniform", "radius": profile.radius}
    if isinstance(profile, StepRings):
        return {
            "variant": "step_rings",
            "radius": profile.radius,
            "rings": [[r, d] for r, d in profile.rings],
        }
    if isinstance(profile, ContinuousLogExp):
        return {
            "variant": "continuous_log_exp",
            "radius": profile.radius,
            "log_coeff": profile.log_coeff,
            "log_offset": profile.log_offset,
            "log_pole": profile.log_pole,
            "patch_radius": profile.patch_radius,
            "exp_coeff": profile.exp_coeff,
            "exp_rate": profile.exp_rate,
        }
    if isinstance(profile, Tabulated):
        return {
            "variant": "tabulated",
            "radius": profile.radius,
            "radii": list(profile.radii),
            "densities": list(profile.densities),
        }
    raise TypeError(f"cannot serialize profile of type {type(profile).__name__}")


def _profile_from_dict(data: dict) -> DensityProfile:
    kind = data.get("variant")
    radius = float(data.get("radius", 1.0))
    if kind == "uniform":
        return Uniform(radius=radius)
    if kind == "step_rings":
        return StepRings(rings=tuple((r, d) for r, d in data["rings"]), radius=radius)
    if kind == "continuous_log_exp":
        return ContinuousLogExp(
            log_coeff=float(data["log_coeff"]),
            log_offset=float(data["log_offset"]),
            log_pole=float(data["log_pole"]),
            patch_radius=float(data["patch_radius"]),
            exp_coeff=float(data["exp_coeff"]),
            exp_rate=float(data["exp_rate"]),
            radius=radius,
        )
    if kind == "tabulated":
        return Tabulated(
            radii=tuple(data["radii"]), densities=tuple(data["densities"]), radius=radius
        )
    raise ValueError(f"unknown profile variant {kind!r}")


def load_profile(path: str | Path) -> DensityProfile:
    """Read a profile from a JSON file.

    Schema: an object with a ``variant`` key (``uniform`` | ``step_rings``
    | ``continuous_log_exp`` | ``tabulated``), optional ``radius``
    (default 1.0), and the variant's parameters:

    - step_rings: ``rings`` = [[outer_radius, density], ...]
    - continuous_log_exp: ``log_coeff``, ``log_offset``, ``log_pole``,
      ``patch_radius``, ``exp_coeff``, ``exp_rate``
    - tabulated: ``radii``, ``densities``
    """
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"profile file {path} must contain a JSON object")
    return _profile_from_dict(data)


def dump_profile(profile: DensityProfile, path: str | Path) -> None:
    """Write a profile to a JSON file readable by `load_profile`."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_profile_to_dict(profile), fh, indent=2)
        fh.write("\n")
