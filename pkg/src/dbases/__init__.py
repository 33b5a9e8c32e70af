"""dbases: difficulty/benefit analysis for synergizing domain expertise with
self-awareness capabilities in self-adaptive software systems.

The package models expertise representations and self-awareness architectural
patterns, enumerates candidate synergies under constraints, scores each
candidate's difficulty and expected benefit, computes Pareto fronts, and emits
plots, tables and annotated pattern diagrams. A CLI (`dbases`) and an HTTP
service (`dbases serve`) front the same engine.
"""

from .model import (
    Capability,
    Category,
    Connector,
    ConnectorKind,
    CriteriaAnswers,
    ExpertiseRepresentation,
    Multiplicity,
    PatternDef,
    ScoreConfig,
    Structurability,
    SynergyForm,
    SynergyLevel,
    Tangibility,
    TraitPair,
    ValidationReport,
    classify,
    classify_traits,
    compat_defaults,
    default_score_config,
    default_traits,
    pattern_by_id,
    pattern_catalog,
    validate_pattern,
    validate_score_config,
)
from .engine import (
    AnalysisResult,
    Candidate,
    SlotChoice,
    SynergyConstraint,
    SynergySlot,
    WhatIfOverrides,
    analyze,
    candidate_benefit,
    candidate_difficulty,
    count_candidates,
    difficulty_rung,
    enumerate_candidates,
    pareto,
    slot_options,
    whatif,
)
from .project_io import Project, ProjectStore, load, loads, save

__version__ = "0.1.0"

__all__ = [
    "AnalysisResult",
    "Candidate",
    "Capability",
    "Category",
    "Connector",
    "ConnectorKind",
    "CriteriaAnswers",
    "ExpertiseRepresentation",
    "Multiplicity",
    "PatternDef",
    "Project",
    "ProjectStore",
    "ScoreConfig",
    "SlotChoice",
    "Structurability",
    "SynergyConstraint",
    "SynergyForm",
    "SynergyLevel",
    "SynergySlot",
    "Tangibility",
    "TraitPair",
    "ValidationReport",
    "WhatIfOverrides",
    "analyze",
    "candidate_benefit",
    "candidate_difficulty",
    "classify",
    "classify_traits",
    "compat_defaults",
    "count_candidates",
    "default_score_config",
    "default_traits",
    "difficulty_rung",
    "enumerate_candidates",
    "load",
    "loads",
    "pareto",
    "pattern_by_id",
    "pattern_catalog",
    "save",
    "slot_options",
    "validate_pattern",
    "validate_score_config",
    "whatif",
]
