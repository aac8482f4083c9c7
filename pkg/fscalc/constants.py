from __future__ import annotations

import enum
from fractions import Fraction


class ConfigVars:
    EPS = "FSCALC_EPS"
    MAX_STEPS = "FSCALC_MAX_STEPS"
    LOG_LEVEL = "FSCALC_LOG_LEVEL"


class Scale(enum.Enum):
    """
    The two function space scales. ``B`` is the Besov scale and ``F`` the
    Triebel-Lizorkin scale.
    """

    B = "B"
    F = "F"


class Location(enum.Enum):
    """Where a space lives: the bounded domain or its boundary"""

    INTERIOR = "interior"
    BOUNDARY = "boundary"


class Problem(enum.Enum):
    """Boundary condition of the semilinear model problem"""

    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"


class SectorPosition(enum.Enum):
    """Position of a value relative to a strict threshold"""

    #: strictly above the threshold
    INSIDE = "inside"
    #: exactly on the threshold (rejected, reported separately)
    BOUNDARY = "boundary"
    #: strictly below the threshold
    OUTSIDE = "outside"


class EmbedRule(enum.Enum):
    """Name of the rule that derived an embedding"""

    IDENTICAL = "identical"
    SAME_P_HIGHER_S = "same-p-higher-s"
    SAME_P_SAME_S_Q_MONOTONE = "same-p-same-s-q-monotone"
    SOBOLEV_SLOPE_1 = "sobolev-slope-1"
    FINITE_MEASURE_RIGHT = "finite-measure-right"
    COMPOSITE = "composite"


class ProductCondition(enum.Enum):
    """Conditions for boundedness of the pointwise product"""

    #: the product itself is defined on the pair of factors
    DEFINED = "defined"
    #: smoothness of the receiving space does not exceed the factors'
    SMOOTHNESS = "smoothness"
    #: Sobolev index of the receiving space is small enough
    SOBOLEV_INDEX = "sobolev-index"
    #: equality exception at the first factor (needs p <= 1 of the second)
    ENDPOINT_FIRST = "endpoint-first"
    #: equality exception at the second factor (needs p <= 1 of the first)
    ENDPOINT_SECOND = "endpoint-second"
    #: sum exponent requirement when the smoothness bound is attained
    Q_CLAUSE = "q-clause"


class OperatorKind(enum.Enum):
    INTERIOR = "interior+singular-green"
    TRACE = "trace"
    POISSON = "poisson"
    REGULARIZING = "regularizing"


class TraceRule(enum.Enum):
    """Rule that justifies a single bootstrap step"""

    NONLINEAR_GAIN_STANDARD = "nonlinear-gain-standard"
    NONLINEAR_GAIN_SHARP = "nonlinear-gain-sharp"
    PARAMETRIX_APPLY = "parametrix-apply"
    JOIN = "join"
    EMBED = "embed"
    DEFECT_ABSORB = "defect-absorb"
    DONE = "done"


class IterationCase(enum.Enum):
    """
    Shape of a single iteration in the (n/p, s)-plane, relative to the
    target space.
    """

    #: the gained space already embeds into the target
    TRIVIAL = "trivial"
    #: smoothness grows at fixed integrability
    SAWTOOTH = "sawtooth"
    #: smoothness pinned at the target, integrability improves
    STAIRCASE = "staircase"
    #: movement along the target's Sobolev line
    MIXED = "mixed"


class VerdictStatus(enum.Enum):
    CERTIFIED = "certified"
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    ABORTED = "aborted"


class Reason(enum.Enum):
    """Machine readable reason codes carried by verdicts"""

    SECTOR_VIOLATION = "sector-violation"
    SECTOR_BOUNDARY = "sector-boundary"
    CLASS_VIOLATION = "class-violation"
    SAFE_SUBSECTOR_VIOLATION = "safe-subsector-violation"
    NON_TERMINATION_GUARD = "non-termination-guard"
    NO_PROGRESS = "no-progress"
    SCALE_MISMATCH = "scale-mismatch"
    FLUX_CONDITION_UNMET = "flux-condition-unmet"
    DIMENSION_UNSUPPORTED = "dimension-unsupported"
    NOT_CONNECTED = "not-connected"
    DIVERGENCE_NONZERO = "divergence-nonzero"
    NO_EXISTENCE_CONDITION = "no-existence-condition"


#: default epsilon used for the deficit on the critical line s = n/p
DEFAULT_EPS = Fraction(1, 64)
#: default cap on bootstrap gain iterations
MAX_BOOTSTRAP_STEPS = 10000
