"""Eigenvalue search by shooting.

For a trial k' the radial equation is integrated from near the axis with
series initial data; a mode corresponds to the displacement vanishing at
the rim.  Trial values are scanned over a grid, every sign change of the
rim value is bracketed and bisected, and each root is classified by
counting interior sign changes of the solution (its nodal circles).  A
node-count mismatch means the scan step straddled two roots; the step is
halved and the scan repeated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .ode import IntegrationError, RadialState, Trajectory, sample_half_grid
from .profiles import DensityProfile
from .specfun import bessel_series, bessel_series_derivative

__all__ = [
    "ModeId",
    "EigenResult",
    "SearchConfig",
    "SolverError",
    "NotEnoughRoots",
    "NodeCountMismatch",
    "initial_conditions",
    "boundary_value",
    "count_nodes",
    "find_eigenvalue",
    "eigen_spectrum",
]

IC_SERIES_TERMS = 4


@dataclass(frozen=True, order=True)
class ModeId:
    """(nodal diameters, interior nodal circles); the rim does not count as a circle."""

    diameters: int
    circles: int

    def __post_init__(self) -> None:
        if self.diameters < 0 or self.circles < 0:
            raise ValueError(f"mode indices must be non-negative, got {self}")

    def __str__(self) -> str:
        return f"({self.diameters},{self.circles})"

    @classmethod
    def parse(cls, text: str) -> "ModeId":
        """Parse 'm,c' (or '(m,c)') into a ModeId."""
        parts = text.strip().strip("()").split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'm,c', got {text!r}")
        try:
            m, c = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"mode indices must be integers, got {text!r}") from None
        return cls(m, c)


@dataclass(frozen=True)
class EigenResult:
    """One converged mode: dimensionless eigenvalue kappa = k' * radius."""

    mode: ModeId
    kappa: float
    nodes_observed: int
    boundary_residual: float


@dataclass(frozen=True)
class SearchConfig:
    """Scan and integration settings; the k-grid entries are divided by the radius.

    Defaults follow the solver's reference setup: start the march at
    r_start = 1e-4, step h = 1e-4 on a unit-radius membrane, scan k' over
    (0.1, 40) in steps of 0.05 and bisect each bracket to 1e-9.
    """

    k_min: float = 0.1
    k_max: float = 40.0
    k_step: float = 0.05
    bisect_tol: float = 1e-9
    r_start: float = 1e-4
    h: float = 1e-4
    order: int = 2
    max_refinements: int = 3


class SolverError(RuntimeError):
    pass


class NotEnoughRoots(SolverError):
    def __init__(self, m: int, found: int, wanted: int, k_max: float):
        super().__init__(
            f"only {found} of {wanted} rim zeros found for m = {m} with k' up to {k_max}; "
            "widen the scan range"
        )


class NodeCountMismatch(SolverError):
    def __init__(self, mode: ModeId, observed: int):
        super().__init__(
            f"mode {mode}: observed {observed} interior nodal circles after maximum scan "
            "refinement; either a double root sits below the scan resolution or the "
            "integration step is too coarse to resolve this mode near the axis"
        )


def _series_start(m: int, kprime: float, rho0: float, r_start: float) -> tuple[float, float]:
    # local wavenumber at the axis: k' * sqrt(rho(0))
    k0 = kprime * np.sqrt(rho0)
    x = k0 * r_start
    return bessel_series(m, x, IC_SERIES_TERMS), k0 * bessel_series_derivative(m, x, IC_SERIES_TERMS)


def initial_conditions(m: int, kprime: float, profile: DensityProfile, r_start: float) -> RadialState:
    """Series initial data near the axis.

    Close to the centre the density is flat, so the equation reduces to
    the uniform one with local wavenumber k0 = k' * sqrt(rho(0)); the
    four-term series of J_m(k0 r) and its derivative seed the march.
    """
    if r_start <= 0:
        raise ValueError(f"r_start must be positive, got {r_start}")
    rho0 = float(profile.density(0.0))
    if rho0 <= 0:
        raise ValueError("density at the centre must be positive")
    R, dR = _series_start(m, kprime, rho0, r_start)
    return RadialState(r=r_start, R=R, dR=dR)


class _GridSolver:
    """Shared pre-sampled density grid for many boundary evaluations."""

    def __init__(self, profile: DensityProfile, config: SearchConfig):
        self.profile = profile
        self.config = config
        self.n_steps, self.h_eff, self.rho_half = sample_half_grid(profile, config.r_start, config.h)
        self.rho0 = float(profile.density(0.0))

    def rim_value(self, m: int, kprime: float) -> tuple[float, int]:
        """(R at the rim, interior node count) for one trial k'."""
        cfg = self.config
        R0, dR0 = _series_start(m, kprime, self.rho0, cfg.r_start)
        R, dR, nodes, status = _kernels.integrate_final(
            m,
            kprime,
            self.rho_half,
            cfg.r_start,
            self.h_eff,
            self.n_steps,
            R0,
            dR0,
            2.0 * self.h_eff,
            cfg.order,
        )
        if status != _kernels.OK:
            raise IntegrationError(step=status, kprime=kprime)
        return R, nodes

    def bisect(self, m: int, lo: float, hi: float, f_lo: float) -> float:
        tol = self.config.bisect_tol
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            f_mid, _ = self.rim_value(m, mid)
            if f_mid == 0.0:
                return mid
            if (f_mid < 0.0) == (f_lo < 0.0):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def roots(self, m: int, wanted: int) -> list[tuple[float, int, float]]:
        """First `wanted` rim zeros for angular order m, ascending.

        Returns (k', observed nodes, rim residual) triples.  The scan step
        is halved and the whole scan redone if node counts reveal a missed
        root (observed nodes must equal the root's rank).
        """
        cfg = self.config
        a = self.profile.radius
        k_lo, k_hi = cfg.k_min / a, cfg.k_max / a
        step = cfg.k_step / a
        for _ in range(cfg.max_refinements + 1):
            found = self._scan(m, wanted, k_lo, k_hi, step)
            if len(found) < wanted:
                raise NotEnoughRoots(m, len(found), wanted, cfg.k_max)
            if all(nodes == rank for rank, (_, nodes, _) in enumerate(found)):
                return found
            step *= 0.5
        bad_rank = next(r for r, (_, n, _) in enumerate(found) if n != r)
        raise NodeCountMismatch(ModeId(m, bad_rank), found[bad_rank][1])

    def _scan(self, m, wanted, k_lo, k_hi, step) -> list[tuple[float, int, float]]:
        out = []
        k_prev = k_lo
        f_prev, _ = self.rim_value(m, k_prev)
        k = k_lo
        while k < k_hi and len(out) < wanted:
            k = min(k + step, k_hi)
            f, _ = self.rim_value(m, k)
            if f == 0.0:
                root = k
            elif f_prev != 0.0 and (f < 0.0) != (f_prev < 0.0):
                root = self.bisect(m, k_prev, k, f_prev)
            else:
                k_prev, f_prev = k, f
                continue
            residual, nodes = self.rim_value(m, root)
            out.append((root, nodes, residual))
            k_prev, f_prev = k, f
        return out


def boundary_value(
    m: int, kprime: float, profile: DensityProfile, config: SearchConfig | None = None
) -> float:
    """Displacement at the rim for one trial k' (the shooting residual)."""
    if kprime <= 0:
        raise ValueError(f"trial k' must be positive, got {kprime}")
    solver = _GridSolver(profile, config or SearchConfig())
    return solver.rim_value(m, kprime)[0]


def count_nodes(trajectory: Trajectory) -> int:
    """Strict sign changes of R on the open interval, excluding the rim zero.

    Any sign change within two steps of the rim is attributed to the
    boundary zero rather than an interior nodal circle.
    """
    R = trajectory.R
    r = trajectory.r
    cutoff = r[-1] - 2.0 * trajectory.h
    nonzero = R != 0.0
    signs = np.sign(R[nonzero])
    radii = r[nonzero]
    flips = signs[1:] != signs[:-1]
    return int(np.count_nonzero(flips & (radii[1:] <= cutoff)))


def find_eigenvalue(
    mode: ModeId, profile: DensityProfile, config: SearchConfig | None = None
) -> EigenResult:
    """Solve one mode: the (circles+1)-th rim zero at the mode's angular order."""
    cfg = config or SearchConfig()
    solver = _GridSolver(profile, cfg)
    found = solver.roots(mode.diameters, mode.circles + 1)
    kprime, nodes, residual = found[mode.circles]
    return EigenResult(
        mode=mode,
        kappa=kprime * profile.radius,
        nodes_observed=nodes,
        boundary_residual=residual,
    )


def eigen_spectrum(
    profile: DensityProfile, m_max: int, c_max: int, config: SearchConfig | None = None
) -> list[EigenResult]:
    """All modes with diameters <= m_max and circles <= c_max, sorted by kappa.

    The computation is sequential and deterministic for a fixed
    configuration.  Solver failures are re-raised annotated with the mode
    that triggered them.
    """
    if not 0 <= m_max <= 10:
        raise ValueError(f"m_max must be in [0, 10], got {m_max}")
    if not 0 <= c_max <= 5:
        raise ValueError(f"c_max must be in [0, 5], got {c_max}")
    cfg = config or SearchConfig()
    solver = _GridSolver(profile, cfg)
    results = []
    for m in range(m_max + 1):
        try:
            found = solver.roots(m, c_max + 1)
        except (SolverError, IntegrationError) as err:
            err.args = (f"[modes with {m} nodal diameters] {err.args[0] if err.args else ''}",)
            raise
        for c, (kprime, nodes, residual) in enumerate(found):
            results.append(
                EigenResult(
                    mode=ModeId(m, c),
                    kappa=kprime * profile.radius,
                    nodes_observed=nodes,
                    boundary_residual=residual,
                )
            )
    results.sort(key=lambda res: res.kappa)
    return results
