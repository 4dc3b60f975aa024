"""Coherent states of deformed su(1,1) and su(2) algebras on truncated
lowest-weight representations."""

__version__ = "0.1.0"

from .algebra import (
    AlgebraKind, AlgebraSpec, casimir_lowest_weight, check_fg_consistency,
    structure_f, structure_g,
)
from .coherent import (
    CoherentStateVector, StateFamily, aocs, dual_cs, expectation,
    matrix_exponential, perelomov_cs,
)
from .conjugate import (
    ConjugatePair, LieMap, conjugate_raising, dual_conjugate, map_to_lie,
    solve_alpha,
)
from .errors import (
    CompactRepError, DegenerateDenominator, DeformedAlgebraError,
    DimensionMismatch, InvalidSpecError, RepresentationError, TruncationError,
    UnitarityViolation,
)
from .report import CheckEntry, VerificationReport
from .representation import (
    OperatorMatrix, Representation, RepKind, RepProbe, ProbeVerdict,
    build_lowest_weight_rep, casimir_matrix, oscillator_realization,
    probe_dimension,
)
from .verify import commutator_residual, run_suite
