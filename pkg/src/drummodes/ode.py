"""Fixed-step Runge-Kutta integration of the radial displacement equation.

The second-order equation

    R'' + R'/r + (rho(r) k'^2 - m^2/r^2) R = 0

is marched as a first-order system from a small start radius (the origin
is a singular point) to the rim.  The default scheme is the explicit
midpoint method; the classical fourth-order scheme is available as a
cross-check.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .profiles import DensityProfile

__all__ = ["RadialState", "Trajectory", "IntegrationError", "radial_rhs", "integrate"]


@dataclass(frozen=True)
class RadialState:
    """Displacement amplitude and its radial derivative at radius r."""

    r: float
    R: float
    dR: float


@dataclass(frozen=True)
class Trajectory:
    """Recorded states of one integration, from r_start to the rim."""

    r: np.ndarray
    R: np.ndarray
    dR: np.ndarray
    h: float
    m: int
    kprime: float

    def __len__(self) -> int:
        return len(self.r)

    @property
    def final(self) -> RadialState:
        return RadialState(float(self.r[-1]), float(self.R[-1]), float(self.dR[-1]))

    def state(self, i: int) -> RadialState:
        return RadialState(float(self.r[i]), float(self.R[i]), float(self.dR[i]))

    def write_csv(self, path_or_file) -> None:
        """Write rows (r, R, dR) with a header, '.' decimal separator."""
        if isinstance(path_or_file, (str, Path)):
            with open(path_or_file, "w", newline="", encoding="utf-8") as fh:
                self.write_csv(fh)
            return
        writer = csv.writer(path_or_file, lineterminator="\n")
        writer.writerow(["r", "R", "dR"])
        for r, R, dR in zip(self.r, self.R, self.dR):
            writer.writerow([repr(float(r)), repr(float(R)), repr(float(dR))])

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


class IntegrationError(RuntimeError):
    """The state became non-finite during the march."""

    def __init__(self, step: int, kprime: float):
        super().__init__(f"non-finite state at step {step} (trial k' = {kprime})")
        self.step = step
        self.kprime = kprime


def radial_rhs(m: int, kprime: float, profile: DensityProfile, state: RadialState) -> tuple[float, float]:
    """First-order form: returns (R', R'') at the given state."""
    if state.r <= 0:
        raise ValueError("the radial equation is singular at r = 0; start at r > 0")
    rho = profile.density(state.r)
    d2R = -state.dR / state.r - (rho * kprime * kprime - m * m / (state.r * state.r)) * state.R
    return state.dR, d2R


def grid_steps(profile: DensityProfile, r_start: float, h: float) -> tuple[int, float]:
    """Number of steps and the effective step that lands exactly on the rim."""
    if not 0 < r_start < profile.radius:
        raise ValueError(f"r_start must lie in (0, {profile.radius}), got {r_start}")
    span = profile.radius - r_start
    if not 0 < h <= span / 100:
        raise ValueError(f"step h must lie in (0, {span / 100}], got {h}")
    n_steps = round(span / h)
    return n_steps, span / n_steps


def sample_half_grid(profile: DensityProfile, r_start: float, h: float) -> tuple[int, float, np.ndarray]:
    """Density on the half-step lattice used by both RK schemes.

    Returns (n_steps, h_eff, rho) with rho[j] = density(r_start + j*h_eff/2)
    for j = 0 .. 2*n_steps.
    """
    n_steps, h_eff = grid_steps(profile, r_start, h)
    radii = r_start + np.arange(2 * n_steps + 1) * (h_eff / 2)
    radii[-1] = profile.radius  # guard accumulated roundoff at the rim
    rho = np.asarray(profile.density(radii), dtype=float)
    return n_steps, h_eff, rho


def integrate(
    m: int,
    kprime: float,
    profile: DensityProfile,
    r_start: float,
    h: float,
    init: RadialState,
    order: int = 2,
) -> Trajectory:
    """March from `init` at r_start to the rim, recording every step.

    `order` selects the scheme: 2 = explicit midpoint (default), 4 =
    classical Runge-Kutta.
    """
    if m < 0:
        raise ValueError(f"mode order must be non-negative, got {m}")
    if order not in (2, 4):
        raise ValueError(f"order must be 2 or 4, got {order}")
    if abs(init.r - r_start) > 1e-12:
        raise ValueError(f"initial state sits at r = {init.r}, expected r_start = {r_start}")
    n_steps, h_eff, rho_half = sample_half_grid(profile, r_start, h)
    out_r = np.empty(n_steps + 1)
    out_R = np.empty(n_steps + 1)
    out_dR = np.empty(n_steps + 1)
    status = _kernels.integrate_record(
        m, kprime, rho_half, r_start, h_eff, n_steps, init.R, init.dR, out_r, out_R, out_dR, order
    )
    if status != _kernels.OK:
        raise IntegrationError(step=status, kprime=kprime)
    return Trajectory(r=out_r, R=out_R, dR=out_dR, h=h_eff, m=m, kprime=kprime)
