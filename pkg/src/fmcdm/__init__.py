"""Group decision evaluation with triangular fuzzy pairwise judgments.

Decision makers answer linguistic pairwise-comparison questionnaires over a
goal / criteria / sub-criteria / alternatives hierarchy; the engine derives
pessimistic, normal, and optimistic priority weights via fuzzy geometric-mean
weighting, AHP-style synthesis, and arithmetic-mean panel aggregation.
"""

from .engine import (
    MODES,
    Mode,
    PanelReport,
    Scorecard,
    aggregate_panel,
    evaluate,
    local_weights,
    normalize_weights,
    row_geometric_means,
    synthesize,
)
from .fuzzy import (
    CANONICAL_TERMS,
    INDIFFERENCE,
    TFN,
    LinguisticTerm,
    TriangularFuzzyNumber,
    UnknownTermError,
    scale_of,
)
from .hierarchy import (
    EGOV_PRESET_NAME,
    GOAL,
    ComparisonSet,
    Hierarchy,
    InvalidHierarchyError,
    Level,
    Node,
    comparison_sets,
    content_hash,
    preset_egov,
    question_count,
    validate,
)
from .judgment import (
    Answer,
    Favored,
    PairwiseMatrix,
    Question,
    ResponseSheet,
    additive_inconsistency,
    answer_to_entries,
    build_matrix,
    completeness,
    enumerate_questions,
)
from .workspace import ReportDocument, Workspace, render_report

__version__ = "0.1.0"

__all__ = [
    "Answer",
    "CANONICAL_TERMS",
    "ComparisonSet",
    "EGOV_PRESET_NAME",
    "Favored",
    "GOAL",
    "Hierarchy",
    "INDIFFERENCE",
    "InvalidHierarchyError",
    "Level",
    "LinguisticTerm",
    "MODES",
    "Mode",
    "Node",
    "PairwiseMatrix",
    "PanelReport",
    "Question",
    "ReportDocument",
    "ResponseSheet",
    "Scorecard",
    "TFN",
    "TriangularFuzzyNumber",
    "UnknownTermError",
    "Workspace",
    "additive_inconsistency",
    "aggregate_panel",
    "answer_to_entries",
    "build_matrix",
    "comparison_sets",
    "completeness",
    "content_hash",
    "enumerate_questions",
    "evaluate",
    "local_weights",
    "normalize_weights",
    "preset_egov",
    "question_count",
    "render_report",
    "row_geometric_means",
    "scale_of",
    "synthesize",
    "validate",
]
