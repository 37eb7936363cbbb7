"""Exact arithmetic for the quadratic exponential family f(x) = exp(u x^2 + v x).

Function values are carried in log space as exact rationals, so identities
such as f(1) = f(|A|) are checked with equality rather than a tolerance.
"""

from .analysis import (
    DarbouxWitness,
    DeltaChain,
    DistanceSolution,
    LogDistance,
    Midpoint,
    RolleReport,
    ScaledExp,
    delta_chain,
    distance_D,
    log_distance,
    midpoint,
    midpoint_value_exponent,
    mirrored_chain_g,
    solve_distance_equals_value,
    verify_darboux,
    verify_rolle,
)
from .core import (
    AbsA,
    ExactExponent,
    Ordering,
    ParamCombo,
    QValue,
    Sign,
    check_symmetry,
    compare_values,
    compute_abs_A,
    derivative_sign_at,
    exponent_at,
    value_at,
)
from .enclosure import Interval, ln_enclosure
from .errors import (
    DegenerateError,
    DomainError,
    DuplicateAbsAError,
    PreconditionError,
    QuadExpError,
    RangeError,
)
from .family import (
    Ball,
    Bounds,
    ClaimReport,
    FamilySequence,
    build_increasing_sequence,
    check_monotone_decrease,
    enumerate_pairs,
    find_partner,
    invert_target,
    tail_in_ball,
)

__version__ = "0.1.0"
