"""Rhetorical-mode toolkit: registry, duality operators, capacity and
entropy metrics, three-layer mapping, and annotated-document analysis."""

from .capacity import (
    MAX_WIDTH,
    MRB,
    CapacityReport,
    CoverageReport,
    GrowthParams,
    capacity,
    capacity_ratio,
    capacity_table,
    coverage,
    coverage_band,
    growth,
)
from .documents import (
    AnnotatedDocument,
    ConeRow,
    IntervalRate,
    LayerTrace,
    RriEstimate,
    Segment,
    StageMapping,
    StageSchedule,
    StageStep,
    StageTrace,
    analyze_coverage,
    cone,
    default_schedule,
    estimate_rri,
    load_schedule,
    load_stage_map,
    parse_document,
    serialize_document,
    serialize_schedule,
    trace_layers,
)
from .entropy import (
    MAX_ENTROPY_WIDTH,
    EntropyReport,
    LayeredEntropyReport,
    asymptotic_subset_entropy,
    entropy_flat,
    entropy_layered,
    entropy_subset_sizes,
    subset_entropy_exact,
    subset_entropy_logspace,
    uniform,
)
from .errors import (
    BadCapacity,
    BadComposition,
    BadConstituent,
    BadCount,
    BadDistribution,
    BadEdge,
    BadIndex,
    BadRuleSet,
    BadSchedule,
    DuplicateMode,
    EmptySegment,
    NoDual,
    NotAtomic,
    NotDiatomic,
    NotEnoughStages,
    OutOfRange,
    ParseError,
    RhetorError,
    SelfUnite,
    UnknownMode,
    UnknownNode,
    UnknownProfile,
    UnmappedStage,
)
from .operators import (
    OPERATOR_KINDS,
    Derivation,
    DualityRuleSet,
    closure,
    default_rules,
    expand,
    forward_backward,
    load_rules,
    orthogonal,
    reduce,
    serialize_rules,
    split,
    unite,
)
from .pyramid import (
    ACADEMIC_PROFILE,
    DEFAULT_PROFILE,
    AcademicFunction,
    BranchingStats,
    LayerNode,
    PyramidGraph,
    academic_function_examples,
    branching_stats,
    compose_academic,
    compose_re,
    load_pyramid,
    realizers,
    serialize_pyramid,
)
from .registry import (
    Mode,
    Origin,
    Registry,
    base_atoms,
    base_registry,
    canon,
    default_registry,
    load_registry,
    serialize_registry,
)

__version__ = "0.1.0"

__all__ = [
    "ACADEMIC_PROFILE",
    "AcademicFunction",
    "AnnotatedDocument",
    "BadCapacity",
    "BadComposition",
    "BadConstituent",
    "BadCount",
    "BadDistribution",
    "BadEdge",
    "BadIndex",
    "BadRuleSet",
    "BadSchedule",
    "BranchingStats",
    "CapacityReport",
    "ConeRow",
    "CoverageReport",
    "DEFAULT_PROFILE",
    "Derivation",
    "DualityRuleSet",
    "DuplicateMode",
    "EmptySegment",
    "EntropyReport",
    "GrowthParams",
    "IntervalRate",
    "LayerNode",
    "LayerTrace",
    "LayeredEntropyReport",
    "MAX_ENTROPY_WIDTH",
    "MAX_WIDTH",
    "MRB",
    "Mode",
    "NoDual",
    "NotAtomic",
    "NotDiatomic",
    "NotEnoughStages",
    "OPERATOR_KINDS",
    "Origin",
    "OutOfRange",
    "ParseError",
    "PyramidGraph",
    "Registry",
    "RhetorError",
    "RriEstimate",
    "Segment",
    "SelfUnite",
    "StageMapping",
    "StageSchedule",
    "StageStep",
    "StageTrace",
    "UnknownMode",
    "UnknownNode",
    "UnknownProfile",
    "UnmappedStage",
    "academic_function_examples",
    "analyze_coverage",
    "asymptotic_subset_entropy",
    "base_atoms",
    "base_registry",
    "branching_stats",
    "canon",
    "capacity",
    "capacity_ratio",
    "capacity_table",
    "closure",
    "compose_academic",
    "compose_re",
    "cone",
    "coverage",
    "coverage_band",
    "default_registry",
    "default_rules",
    "default_schedule",
    "entropy_flat",
    "entropy_layered",
    "entropy_subset_sizes",
    "estimate_rri",
    "expand",
    "forward_backward",
    "growth",
    "load_pyramid",
    "load_registry",
    "load_rules",
    "load_schedule",
    "load_stage_map",
    "orthogonal",
    "parse_document",
    "realizers",
    "reduce",
    "serialize_document",
    "serialize_pyramid",
    "serialize_registry",
    "serialize_rules",
    "serialize_schedule",
    "split",
    "subset_entropy_exact",
    "subset_entropy_logspace",
    "trace_layers",
    "uniform",
    "unite",
]
