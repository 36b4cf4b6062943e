"""Security risk scoring and cost-efficiency optimization for organizations
that depend on machine learning.

Rate how each security control contributes to confidentiality, integrity and
availability, map the controls onto valued assets and tasks, and get
protection scores, coverage, sensitivity sweeps and the cheapest way to buy
more of it.
"""

from .catalog import (
    CatalogEntry,
    CatalogLevel,
    builtin_catalog,
    guideline_score,
    instantiate_from_catalog,
)
from .cost import CostReport, cost_curve, cost_report, current_cost, efficiency_ratio
from .domain import (
    Assessment,
    BaseWeightMatrix,
    CategoryThreshold,
    Component,
    COMPONENT_ORDER,
    EvalDomain,
    EvaluationFactor,
    FactorCategory,
    FactorThreshold,
    MappingMatrix,
    ProtectionTarget,
    SecurityAttribute,
    TargetKind,
    TargetThreshold,
    Threshold,
    ValidationIssue,
    normalize_targets,
    validate_assessment,
)
from .errors import (
    BindFailure,
    BudgetExceeded,
    DimensionMismatch,
    EmptyTargetList,
    IndexOutOfRange,
    InfeasibleAssessment,
    InvalidAssessment,
    IoFailure,
    LoadFailure,
    MlriskError,
    ParseError,
    RawValueOutOfRange,
    SameAxis,
    ScoreOutOfRange,
    TailoredOutFactor,
    UnknownCatalogId,
    UnknownId,
    UnknownScopeId,
    ValidationError,
)
from .optimizer import (
    OptimizationConfig,
    OptimizationResult,
    Strategy,
    optimize,
    optimize_exhaustive,
    optimize_heuristic,
)
from .project_io import export_tabular, load_assessment, save_assessment
from .scoring import (
    RelativeWeightTable,
    ScoreReport,
    ThresholdVerdict,
    check_thresholds,
    coverage,
    evaluate,
    final_score,
    protection_score,
    relative_weight,
    total_coverage,
    with_scores,
)
from .sensitivity import (
    FactorInfluence,
    SurfaceResult,
    SweepResult,
    efficiency_surface,
    rank_factors,
    sweep_ef,
)

__version__ = "0.1.0"
