"""Derivative-free search over loading parameters to minimize aharmonicity.

The objective builds a density profile from a parameter vector, solves
the spectrum over a target mode set, normalizes it (one-diameter mode at
2), and returns the RMS deviation from the per-mode targets.  The lowest
mode is left out of the objective: with central loading it cannot be
held at 1 and is checked after the fact instead (it settles near 1.07).

The search is a bounded Nelder-Mead simplex: every candidate is clipped
into the box before evaluation, the budget counts objective evaluations,
and the full evaluation trace is returned.  Runs are deterministic for a
fixed seed, which only influences the initial simplex.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .ode import IntegrationError
from .profiles import ContinuousLogExp, DensityProfile, StepRings
from .shooting import ModeId, SearchConfig, SolverError, eigen_spectrum
from .spectrum import harmonicity, ratio_table

__all__ = [
    "TuneProblem",
    "TuneResult",
    "objective",
    "tune",
    "default_continuous_problem",
    "default_rings_problem",
    "load_tune_spec",
    "TARGET_RATIOS",
]

log = logging.getLogger(__name__)

PENALTY = 1e3

# minimal separation enforced between ordered radial parameters
_ORDER_MARGIN = 0.02

# Near-integer overtone targets on the scale where mode (1,0) sits at 2.
# The lowest mode has no target: the loading decides where it lands.
TARGET_RATIOS: dict[ModeId, int] = {
    ModeId(1, 0): 2,
    ModeId(2, 0): 3,
    ModeId(0, 1): 3,
    ModeId(3, 0): 4,
    ModeId(1, 1): 4,
    ModeId(4, 0): 5,
    ModeId(2, 1): 5,
    ModeId(0, 2): 5,
}

_TEMPLATES = ("continuous_log_exp", "step_rings")


@dataclass(frozen=True)
class TuneProblem:
    """A parametrized profile family, box bounds, and per-mode ratio targets."""

    template: str
    names: tuple[str, ...]
    lower: tuple[float, ...]
    upper: tuple[float, ...]
    start: tuple[float, ...]
    targets: dict[ModeId, float] = field(default_factory=lambda: dict(TARGET_RATIOS))
    base_mode: ModeId = ModeId(1, 0)
    base_value: float = 2.0
    budget: int = 500
    config: SearchConfig = field(default_factory=lambda: SearchConfig(h=1e-3))

    def __post_init__(self) -> None:
        if self.template not in _TEMPLATES:
            raise ValueError(f"template must be one of {_TEMPLATES}, got {self.template!r}")
        if self.template == "continuous_log_exp":
            required = {"log_coeff", "log_offset", "log_pole", "patch_radius", "exp_coeff", "exp_rate"}
            if set(self.names) != required:
                raise ValueError(f"continuous template needs parameters {sorted(required)}")
        else:
            n_rings = (len(self.names) + 1) // 2
            required = {f"r{i}" for i in range(1, n_rings)} | {f"d{i}" for i in range(1, n_rings + 1)}
            if set(self.names) != required or n_rings < 2:
                raise ValueError(
                    "step_rings template needs parameters r1..r{k-1} and d1..d{k} for k >= 2 rings"
                )
        n = len(self.names)
        if not (len(self.lower) == len(self.upper) == len(self.start) == n):
            raise ValueError("names, lower, upper and start must have equal length")
        if any(lo > hi for lo, hi in zip(self.lower, self.upper)):
            raise ValueError("every lower bound must not exceed its upper bound")
        if any(not lo <= s <= hi for lo, s, hi in zip(self.lower, self.start, self.upper)):
            raise ValueError("start point must lie within the bounds")
        if self.budget < 50:
            raise ValueError(f"budget must be at least 50 evaluations, got {self.budget}")
        if self.base_mode not in self.targets:
            raise ValueError(f"base mode {self.base_mode} needs a target entry")

    def clip(self, params: Sequence[float]) -> np.ndarray:
        """Project a candidate into the feasible set.

        Box clipping alone cannot express the ordering constraints (the
        log pole must lie beyond the patch edge; ring edges must ascend
        and stay inside the rim), so those are repaired here as well:
        every point this returns builds a valid profile.
        """
        x = np.clip(np.asarray(params, dtype=float), self.lower, self.upper)
        index = {name: i for i, name in enumerate(self.names)}
        if self.template == "continuous_log_exp":
            pole, patch = index["log_pole"], index["patch_radius"]
            x[pole] = max(x[pole], x[patch] + _ORDER_MARGIN)
        else:
            edges = sorted(name for name in self.names if name.startswith("r"))
            floor = 0.0
            for name in edges:
                i = index[name]
                x[i] = min(max(x[i], floor + _ORDER_MARGIN), 1.0 - _ORDER_MARGIN)
                floor = x[i]
        return x

    def build_profile(self, params: Sequence[float]) -> DensityProfile:
        values = dict(zip(self.names, params))
        if self.template == "continuous_log_exp":
            return ContinuousLogExp(**values)
        # step_rings: parameters r1..r_{n-1} (inner edges) and d1..dn; the
        # outermost ring always ends at the rim.
        n_rings = (len(self.names) + 1) // 2
        edges = [values[f"r{i}"] for i in range(1, n_rings)] + [1.0]
        dens = [values[f"d{i}"] for i in range(1, n_rings + 1)]
        return StepRings(rings=tuple(zip(edges, dens)))

    def mode_extent(self) -> tuple[int, int]:
        m_max = max(mode.diameters for mode in self.targets)
        c_max = max(mode.circles for mode in self.targets)
        return m_max, c_max


@dataclass(frozen=True)
class TuneResult:
    params: np.ndarray
    value: float
    trace: tuple[tuple[np.ndarray, float], ...]
    evaluations: int
    budget_exhausted: bool

    def named_params(self, problem: TuneProblem) -> dict[str, float]:
        return {name: float(v) for name, v in zip(problem.names, self.params)}


def objective(params: Sequence[float], problem: TuneProblem) -> float:
    """RMS deviation from the target ratios; PENALTY if the candidate cannot be solved."""
    try:
        profile = problem.build_profile(params)
    except (ValueError, TypeError) as err:
        log.warning("invalid candidate %s: %s", np.asarray(params), err)
        return PENALTY
    m_max, c_max = problem.mode_extent()
    try:
        spec = eigen_spectrum(profile, m_max, c_max, problem.config)
        table = ratio_table(spec, problem.base_mode, problem.base_value)
        report = harmonicity(table, modes=problem.targets.keys(), targets=problem.targets)
    except (SolverError, IntegrationError, KeyError) as err:
        log.warning("solver failed for candidate %s: %s", np.asarray(params), err)
        return PENALTY
    return report.rms


def _initial_simplex(problem: TuneProblem, seed: int) -> list[np.ndarray]:
    # Vertex 0 is the start point; each further vertex offsets one
    # coordinate by a seeded fraction of the box width, flipped downward
    # when the step would leave the box.
    rng = np.random.default_rng(seed)
    x0 = problem.clip(problem.start)
    lower = np.asarray(problem.lower)
    upper = np.asarray(problem.upper)
    width = upper - lower
    simplex = [x0]
    for i in range(len(x0)):
        step = (0.10 + 0.15 * rng.random()) * width[i]
        if step == 0.0:
            step = 0.1  # degenerate box; still need an affinely independent vertex
        vertex = x0.copy()
        vertex[i] = x0[i] + step if x0[i] + step <= upper[i] else x0[i] - step
        simplex.append(problem.clip(vertex))
    return simplex


def tune(problem: TuneProblem, seed: int = 0) -> TuneResult:
    """Bounded Nelder-Mead over the problem's box, at most `budget` evaluations.

    Returns the best-found parameters, their objective, and the complete
    evaluation trace in order.  If the budget runs out before the simplex
    collapses, the result is flagged `budget_exhausted`.
    """
    alpha, gamma, beta, delta = 1.0, 2.0, 0.5, 0.5
    xatol, fatol = 1e-6, 1e-10

    trace: list[tuple[np.ndarray, float]] = []

    def evaluate(x: np.ndarray) -> float:
        value = objective(x, problem)
        trace.append((x.copy(), value))
        return value

    budget = problem.budget
    simplex = [(x, evaluate(x)) for x in _initial_simplex(problem, seed)]
    exhausted = False
    while True:
        simplex.sort(key=lambda pair: pair[1])
        spread_f = abs(simplex[-1][1] - simplex[0][1])
        spread_x = max(float(np.max(np.abs(p - simplex[0][0]))) for p, _ in simplex[1:])
        if spread_f <= fatol and spread_x <= xatol:
            break
        if len(trace) >= budget:
            exhausted = True
            break
        centroid = np.mean([p for p, _ in simplex[:-1]], axis=0)
        worst, f_worst = simplex[-1]

        reflected = problem.clip(centroid + alpha * (centroid - worst))
        f_reflected = evaluate(reflected)
        if f_reflected < simplex[0][1] and len(trace) < budget:
            expanded = problem.clip(centroid + gamma * (centroid - worst))
            f_expanded = evaluate(expanded)
            simplex[-1] = (expanded, f_expanded) if f_expanded < f_reflected else (reflected, f_reflected)
        elif f_reflected < simplex[-2][1]:
            simplex[-1] = (reflected, f_reflected)
        elif len(trace) < budget:
            contracted = problem.clip(centroid + beta * (worst - centroid))
            f_contracted = evaluate(contracted)
            if f_contracted < f_worst:
                simplex[-1] = (contracted, f_contracted)
            else:
                best = simplex[0][0]
                shrunk = [simplex[0]]  # the best vertex stays put
                for point, _ in simplex[1:]:
                    if len(trace) >= budget:
                        exhausted = True
                        break
                    moved = problem.clip(best + delta * (point - best))
                    shrunk.append((moved, evaluate(moved)))
                if exhausted:
                    break
                simplex = shrunk
        else:
            exhausted = True
            break

    best_idx = min(range(len(trace)), key=lambda i: trace[i][1])
    best_x, best_f = trace[best_idx]
    return TuneResult(
        params=best_x,
        value=best_f,
        trace=tuple(trace),
        evaluations=len(trace),
        budget_exhausted=exhausted,
    )


_CONTINUOUS_NAMES = ("log_coeff", "log_offset", "log_pole", "patch_radius", "exp_coeff", "exp_rate")
_CONTINUOUS_LOWER = (0.0, 0.0, 0.05, 0.10, 0.0, 0.0)
_CONTINUOUS_UPPER = (10.0, 25.0, 2.00, 0.95, 3.0, 8.0)
# degenerate-uniform start: zero log slope, offset at baseline, no exponential
_CONTINUOUS_START = (0.0, 1.0, 0.70, 0.50, 0.0, 1.0)

_RINGS_NAMES = ("r1", "r2", "d1", "d2", "d3")
_RINGS_LOWER = (0.05, 0.30, 1.0, 1.0, 1.0)
_RINGS_UPPER = (0.60, 0.95, 15.0, 8.0, 3.0)
_RINGS_START = (0.30, 0.55, 1.0, 1.0, 1.0)


def default_continuous_problem(budget: int = 500, config: SearchConfig | None = None) -> TuneProblem:
    """Six-parameter log+exp loading, started from the degenerate uniform point."""
    return TuneProblem(
        template="continuous_log_exp",
        names=_CONTINUOUS_NAMES,
        lower=_CONTINUOUS_LOWER,
        upper=_CONTINUOUS_UPPER,
        start=_CONTINUOUS_START,
        budget=budget,
        config=config or SearchConfig(h=1e-3),
    )


def default_rings_problem(budget: int = 500, config: SearchConfig | None = None) -> TuneProblem:
    """Three concentric rings (two free edges, three free densities)."""
    return TuneProblem(
        template="step_rings",
        names=_RINGS_NAMES,
        lower=_RINGS_LOWER,
        upper=_RINGS_UPPER,
        start=_RINGS_START,
        budget=budget,
        config=config or SearchConfig(h=1e-3),
    )


def load_tune_spec(path: str | Path) -> TuneProblem:
    """Read a tune problem from a JSON file.

    Schema: ``template`` (continuous_log_exp | step_rings), ``names``,
    ``lower``, ``upper``, ``start`` (parallel arrays), optional
    ``targets`` (object mapping "m,c" to a ratio), ``base_mode`` ("m,c"),
    ``base_value``, ``budget`` and ``step`` (integration step used while
    tuning).  Omitted fields fall back to the defaults above.
    """
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"tune spec {path} must contain a JSON object")
    kwargs: dict = {
        "template": data["template"],
        "names": tuple(data["names"]),
        "lower": tuple(float(v) for v in data["lower"]),
        "upper": tuple(float(v) for v in data["upper"]),
        "start": tuple(float(v) for v in data["start"]),
    }
    if "targets" in data:
        kwargs["targets"] = {ModeId.parse(k): float(v) for k, v in data["targets"].items()}
    if "base_mode" in data:
        kwargs["base_mode"] = ModeId.parse(data["base_mode"])
    if "base_value" in data:
        kwargs["base_value"] = float(data["base_value"])
    if "budget" in data:
        kwargs["budget"] = int(data["budget"])
    if "step" in data:
        kwargs["config"] = SearchConfig(h=float(data["step"]))
    return TuneProblem(**kwargs)
