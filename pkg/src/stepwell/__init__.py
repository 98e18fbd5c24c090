"""Spectrum of the infinite square well with a potential step.

Two independent routes to the levels: bracketed root finding of the exact
spectral equations, and periodic-orbit quantization built on the binary
symbolic dynamics of non-Newtonian orbits.  The scaling step ``V = lam*E``
adds a closed-form series.
"""

__version__ = "0.1.0"

from .errors import (
    BracketError,
    ConvergenceError,
    DegeneratePointError,
    InvalidInputError,
    RangeViolationError,
    StepWellError,
    UnsupportedConfigurationError,
)
from .exact import (
    EnergyPoint,
    Level,
    WellConfig,
    WeylData,
    action,
    energy_point,
    exact_roots,
    gamma0,
    invert_action,
    momentum_from_action,
    reflection,
    residual,
    separator,
    spectral_function,
    weyl,
)
from .symbolic import (
    OrbitClass,
    WeightSignature,
    canonicalize,
    necklaces,
    orbit_class,
    prime_orbit_count,
    repetition_number,
    weight_signature,
)
from .poe import ApproximationReport, ExpansionTerm, action_level, convergence_report, orbit_term, weyl_term
from .scaling import ScalingConfig, scaling_config, scaling_kn, scaling_residual, scaling_roots, scaling_separators
