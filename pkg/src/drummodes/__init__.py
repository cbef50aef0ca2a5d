"""Eigenmodes and harmonicity of circular drum membranes with radial loading.

A uniform circular membrane has overtones at Bessel-zero ratios, which
are irrational multiples of the fundamental: it cannot sound a pitch.
Loading the centre (as on the right-hand Indian drum head) reshapes the
spectrum; this package solves the loaded radial eigenproblem by shooting,
tabulates frequency ratios, measures how close they come to integers,
and searches loading parameters that make the overtones harmonic.
"""

from .ode import IntegrationError, RadialState, Trajectory, integrate, radial_rhs
from .profiles import (
    ContinuousLogExp,
    DensityProfile,
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
from .shooting import (
    EigenResult,
    ModeId,
    NodeCountMismatch,
    NotEnoughRoots,
    SearchConfig,
    SolverError,
    boundary_value,
    count_nodes,
    eigen_spectrum,
    find_eigenvalue,
    initial_conditions,
)
from .specfun import (
    BesselEval,
    bessel_eval,
    bessel_j,
    bessel_j_prime,
    bessel_series,
    bessel_zero,
)
from .spectrum import (
    AudibilityReport,
    HarmonicityReport,
    RatioTable,
    audibility,
    harmonicity,
    ratio_table,
)
from .tuner import TuneProblem, TuneResult, objective, tune

__version__ = "0.1.0"
