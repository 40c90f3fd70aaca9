"""radialgate: origin boundary-condition laboratory for the radial equation.

The package measures the point defect that the radial reduction of the 3D
Laplacian hides at the origin, classifies the Frobenius branches of the
reduced radial function under competing boundary policies, and shows how
the policy choice changes bound-state spectra for regular and singular
potentials.
"""

from .deltaprobe import (
    Finite,
    Infinite,
    LimitClass,
    ResidualReport,
    Zero,
    asymptotic_origin_limit,
    identity_defect_away_from_origin,
    min_exponent_bound,
    numeric_delta_residual,
)
from .errors import (
    DomainError,
    FallToCenter,
    GridTooCoarse,
    KGFallToCenter,
    LogCase,
    NoConvergence,
    NonDecayingTail,
    NonPositiveSamples,
    PolicyError,
    PotentialParseError,
    RadialGateError,
    StronglySingularUnsupported,
    Unclassifiable,
    WindowEmpty,
)
from .indicial import (
    BoundaryPolicy,
    DirichletOrigin,
    ExponentFlags,
    IndicialReport,
    SquareIntegrableOnly,
    admissibility,
    format_policy,
    indicial_exponents,
    parse_policy,
)
from .oracle3d import (
    CartesianGrid,
    Eigenvalues3D,
    RadialProfile,
    lowest_eigenvalues_3d,
    point_defect_3d,
)
from .potentials import (
    Coulomb,
    Harmonic,
    InverseSquare,
    OriginClass,
    Potential,
    PowerLaw,
    RadialGrid,
    Regular,
    RegularizedInverseSquare,
    StronglySingular,
    TransitiveSingular,
    classify_origin,
    evaluate_potential,
    format_potential,
    parse_potential,
)
from .solver import (
    FrobeniusStart,
    NumerovResult,
    OriginSlopeFit,
    Spectrum,
    SpectrumEntry,
    bound_states,
    kg_bound_states,
    numerov_integrate,
    origin_slope_fit,
    policy_contrast,
    solve_wavefunction,
    thread_cap,
)

__version__ = "0.1.0"
