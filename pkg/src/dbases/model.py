"""Core domain vocabulary: self-awareness capabilities, expertise representation
categories and traits, synergy levels/forms, the classification questionnaire,
the compatibility registry, the architectural pattern catalog, and score tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Iterable, Mapping, Optional, Sequence, Union


class ModelError(ValueError):
    """Raised when a core-model value violates a structural invariant."""


# ---------------------------------------------------------------------------
# Capabilities, categories, traits, levels, forms
# ---------------------------------------------------------------------------

class Capability(str, Enum):
    """The five capabilities of computational self-awareness."""

    STIMULUS = "stimulus"
    INTERACTION = "interaction"
    TIME = "time"
    GOAL = "goal"
    META_SELF = "meta_self"


# Canonical display order for capabilities (stimulus is the prerequisite layer).
CAPABILITY_ORDER: tuple[Capability, ...] = (
    Capability.STIMULUS,
    Capability.INTERACTION,
    Capability.TIME,
    Capability.GOAL,
    Capability.META_SELF,
)

ALL_CAPABILITIES: frozenset[Capability] = frozenset(Capability)


class Structurability(str, Enum):
    STRUCTURAL = "structural"
    NON_STRUCTURAL = "non_structural"


class Tangibility(str, Enum):
    TANGIBLE = "tangible"
    NON_TANGIBLE = "non_tangible"


class SynergyLevel(IntEnum):
    """Depth of expertise incorporation; totally ordered L0 < L1 < L2 < L3."""

    L0 = 0
    L1 = 1
    L2 = 2
    L3 = 3

    @property
    def label(self) -> str:
        return self.name


class SynergyForm(str, Enum):
    SPECIFIC = "specific"
    GENERAL = "general"


FORM_ORDER: tuple[SynergyForm, ...] = (SynergyForm.SPECIFIC, SynergyForm.GENERAL)

BUILTIN_CATEGORY_NAMES: tuple[str, ...] = (
    "methodology",
    "concept",
    "model",
    "documentation",
    "program",
    "assumption",
)


@dataclass(frozen=True)
class Category:
    """An expertise-representation category.

    One of the six built-in categories, or any other nonempty name supplied
    by the engineer when nothing built-in fits.
    """

    name: str

    def __post_init__(self) -> None:
        cleaned = self.name.strip()
        if not cleaned:
            raise ModelError("category name must be nonempty")
        if cleaned.lower() in BUILTIN_CATEGORY_NAMES:
            cleaned = cleaned.lower()
        object.__setattr__(self, "name", cleaned)

    @property
    def is_builtin(self) -> bool:
        return self.name in BUILTIN_CATEGORY_NAMES

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class TraitPair:
    """Structurability/tangibility of a representation.

    Either field may be unset on a category default; both must be set before
    a representation validates.
    """

    structurability: Optional[Structurability] = None
    tangibility: Optional[Tangibility] = None

    @property
    def is_complete(self) -> bool:
        return self.structurability is not None and self.tangibility is not None

    def merged_with(self, other: "TraitPair") -> "TraitPair":
        """Overlay explicit values from `other` onto this pair."""
        return TraitPair(
            structurability=other.structurability or self.structurability,
            tangibility=other.tangibility or self.tangibility,
        )

    def key(self) -> tuple[Structurability, Tangibility]:
        if not self.is_complete:
            raise ModelError("trait pair is not fully determined")
        return (self.structurability, self.tangibility)  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# Classification questionnaire (shipped checklists)
# ---------------------------------------------------------------------------

CATEGORY_CRITERIA: dict[str, tuple[str, ...]] = {
    "methodology": (
        "Covers all or nearly all the phases in engineering a software system.",
        "Contains specific methods, rules, postulates, procedures, or processes "
        "to manage a software or system project.",
        "Involves description about the roles of different stakeholders in the "
        "engineering process.",
    ),
    "concept": (
        "Represents an abstract idea or generic notion in mind that captures "
        "some common and justifiable phenomena of different instances in "
        "software and system engineering.",
        "Aims to describe an idea or notion in a plain way that is intuitive "
        "and close to the general understanding of human.",
        "Is a widely recognized practice and truth in the engineering process.",
    ),
    "model": (
        "Contains a formal notation or language to describe how knowledge "
        "about the software system can be captured.",
        "Can represent certain aspects of the software system and the "
        "relationships between them.",
        "Is a more formal way of representing concept(s).",
        "Is often illustrated in a graphical manner.",
    ),
    "documentation": (
        "Contains metadata provided on digital or analog media.",
        "Aims to illustrate data or represent agreement between parties for "
        "the software system.",
        "Is entirely (or mostly) based on plain textual language of human.",
    ),
    "program": (
        "Is related to the source code that enables the execution of the "
        "software system.",
    ),
    "assumption": (
        "Is a general belief about the software system derived from specific "
        "instances.",
        "Represents the sense of expectation on certain aspects of the "
        "software system, which is not guaranteed to be true.",
    ),
}

STRUCTURABILITY_CRITERIA: tuple[str, ...] = (
    "Its organization and arrangement of the internal elements (and their "
    "relations) form some repeatable patterns.",
    "It can be specialized into case dependent variants, which, although "
    "different, can still be derived from the same core.",
    "It contains explicit, step-by-step information about how itself can be "
    "assembled.",
)

TANGIBILITY_CRITERIA: tuple[str, ...] = (
    "It can be directly seen or touched to understand the information it holds.",
    "It comes with a digital or analog media.",
)

LEVEL_CRITERIA: dict[SynergyLevel, tuple[str, ...]] = {
    SynergyLevel.L0: (),
    SynergyLevel.L1: (
        "The expertise representation is specialized through in-depth "
        "reasoning according to the software system to be built.",
    ),
    SynergyLevel.L2: (
        "The expertise representation is specialized through in-depth human "
        "reasoning according to the software system to be built.",
        "There is a non-trivial automatic process that extracts information "
        "from the expertise representation for the software system.",
    ),
    SynergyLevel.L3: (
        "The expertise representation is specialized through in-depth human "
        "reasoning according to the software system to be built.",
        "There is a non-trivial automatic process that extracts information "
        "from the expertise representation for the software system.",
        "The internal components of the algorithm are tailored, such that it "
        "can actively and directly exploit the information extracted from the "
        "expertise representation.",
    ),
}


@dataclass(frozen=True)
class CriteriaAnswers:
    """Questionnaire answers: one boolean per shipped criterion.

    `categories` maps a built-in category name to its ordered answer list;
    categories left out are treated as not matched. The two trait checklists
    are optional and may be left empty when only category classification is
    wanted.
    """

    categories: Mapping[str, Sequence[bool]] = field(default_factory=dict)
    structurability: Sequence[bool] = ()
    tangibility: Sequence[bool] = ()


def classify(
    answers: CriteriaAnswers,
    criteria: Optional[Mapping[str, Sequence[str]]] = None,
) -> set[Category]:
    """Return every built-in category whose criteria are all answered true.

    An empty result means nothing built-in fits and the caller should assign
    an `other` category. Multiple matches are returned in full; picking one
    is the engineer's call. Custom checklists may be supplied via `criteria`
    to extend or replace the shipped ones.
    """
    checklists = dict(CATEGORY_CRITERIA if criteria is None else criteria)
    matched: set[Category] = set()
    for name, values in answers.categories.items():
        if name not in checklists:
            raise ModelError(f"unknown category in answers: {name!r}")
        expected = len(checklists[name])
        if len(values) != expected:
            raise ModelError(
                f"category {name!r} expects {expected} answers, got {len(values)}"
            )
        if expected > 0 and all(values):
            matched.add(Category(name))
    return matched


def classify_traits(answers: CriteriaAnswers) -> TraitPair:
    """Derive structurability/tangibility from the trait checklists.

    A trait is only determined when its checklist is answered; all-true
    answers yield the structural/tangible side.
    """
    structurability: Optional[Structurability] = None
    tangibility: Optional[Tangibility] = None
    if answers.structurability:
        if len(answers.structurability) != len(STRUCTURABILITY_CRITERIA):
            raise ModelError(
                f"structurability expects {len(STRUCTURABILITY_CRITERIA)} "
                f"answers, got {len(answers.structurability)}"
            )
        structurability = (
            Structurability.STRUCTURAL
            if all(answers.structurability)
            else Structurability.NON_STRUCTURAL
        )
    if answers.tangibility:
        if len(answers.tangibility) != len(TANGIBILITY_CRITERIA):
            raise ModelError(
                f"tangibility expects {len(TANGIBILITY_CRITERIA)} answers, "
                f"got {len(answers.tangibility)}"
            )
        tangibility = (
            Tangibility.TANGIBLE
            if all(answers.tangibility)
            else Tangibility.NON_TANGIBLE
        )
    return TraitPair(structurability, tangibility)


# ---------------------------------------------------------------------------
# Trait defaults per category
# ---------------------------------------------------------------------------

_S = Structurability
_T = Tangibility

_CATEGORY_TRAIT_DEFAULTS: dict[str, TraitPair] = {
    "model": TraitPair(_S.STRUCTURAL, _T.TANGIBLE),
    "program": TraitPair(_S.STRUCTURAL, _T.TANGIBLE),
    "assumption": TraitPair(_S.NON_STRUCTURAL, _T.NON_TANGIBLE),
    "concept": TraitPair(_S.NON_STRUCTURAL, _T.NON_TANGIBLE),
    "documentation": TraitPair(None, _T.TANGIBLE),
    "methodology": TraitPair(None, _T.NON_TANGIBLE),
}


def default_traits(category: Union[Category, str]) -> TraitPair:
    """Default trait pair for a category; fields the taxonomy leaves open stay unset."""
    name = category.name if isinstance(category, Category) else Category(category).name
    return _CATEGORY_TRAIT_DEFAULTS.get(name, TraitPair())


# ---------------------------------------------------------------------------
# Compatibility registry (which capabilities a representation can synergize with)
# ---------------------------------------------------------------------------

_STG = frozenset({Capability.STIMULUS, Capability.TIME, Capability.GOAL})
_TG = frozenset({Capability.TIME, Capability.GOAL})
_STIG = frozenset(
    {Capability.STIMULUS, Capability.TIME, Capability.INTERACTION, Capability.GOAL}
)
_SG = frozenset({Capability.STIMULUS, Capability.GOAL})

# name -> (category, capabilities); names are matched case-insensitively.
COMPAT_REGISTRY: dict[str, tuple[str, frozenset[Capability]]] = {
    "ssadm": ("methodology", ALL_CAPABILITIES),
    "scrum": ("methodology", ALL_CAPABILITIES),
    "technical debt": ("concept", _TG),
    "code smell": ("concept", _STG),
    "software entropy": ("concept", _TG),
    "feature creep": ("concept", _STG),
    "feature model": ("model", _STG),
    "goal model": ("model", _STG),
    "uml": ("model", ALL_CAPABILITIES),
    "petri net": ("model", _STIG),
    "markov model": ("model", _STIG),
    "queuing model": ("model", _STG),
    "design pattern": ("model", _SG),
    "sla": ("documentation", _STG),
    "requirement documents": ("documentation", ALL_CAPABILITIES),
    "api": ("documentation", _SG),
    "source code": ("program", _STIG),
    "library invocation and dependency": ("program", _STG),
    "past problem instances and experiences": ("assumption", ALL_CAPABILITIES),
    "insights from peer and users discussions": ("assumption", ALL_CAPABILITIES),
}


def compat_defaults(name_or_category: Union[str, Category]) -> frozenset[Capability]:
    """Default compatible capabilities for a representation name or category.

    Exact (case-insensitive) name matches win; otherwise a built-in category
    yields the union over its registry entries. Unknown names and categories
    yield the empty set, signalling that the project must declare
    compatibilities explicitly. The registry is a guideline, not a
    restriction: declared compatibilities always override it.
    """
    key = (
        name_or_category.name
        if isinstance(name_or_category, Category)
        else str(name_or_category)
    ).strip().lower()
    if key in COMPAT_REGISTRY:
        return COMPAT_REGISTRY[key][1]
    if key in BUILTIN_CATEGORY_NAMES:
        union: frozenset[Capability] = frozenset()
        for category, caps in COMPAT_REGISTRY.values():
            if category == key:
                union |= caps
        return union
    return frozenset()


# ---------------------------------------------------------------------------
# Expertise representations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpertiseRepresentation:
    """A named, categorized, trait-tagged unit of domain expertise."""

    id: str
    name: str
    category: Category
    traits: TraitPair
    compatible_capabilities: frozenset[Capability]

    def __post_init__(self) -> None:
        if not self.id.strip():
            raise ModelError("representation id must be nonempty")
        if not self.compatible_capabilities:
            raise ModelError(
                f"representation {self.id!r} must be compatible with at least "
                "one capability"
            )
        if not self.traits.is_complete:
            raise ModelError(
                f"representation {self.id!r} traits are not fully determined"
            )
        for message in trait_consistency_violations(self.category, self.traits):
            raise ModelError(f"representation {self.id!r}: {message}")


def trait_consistency_violations(category: Category, traits: TraitPair) -> list[str]:
    """Check declared traits against the fixed parts of the category taxonomy."""
    violations: list[str] = []
    fixed = _CATEGORY_TRAIT_DEFAULTS.get(category.name)
    if fixed is None:
        return violations
    if fixed.structurability and traits.structurability != fixed.structurability:
        violations.append(
            f"category {category.name!r} requires structurability "
            f"{fixed.structurability.value!r}"
        )
    if fixed.tangibility and traits.tangibility != fixed.tangibility:
        violations.append(
            f"category {category.name!r} requires tangibility "
            f"{fixed.tangibility.value!r}"
        )
    return violations


# ---------------------------------------------------------------------------
# Pattern catalog
# ---------------------------------------------------------------------------

class ConnectorKind(str, Enum):
    PHYSICAL_INTER_CAPABILITY = "physical_inter_capability"
    PHYSICAL_SAME_CAPABILITY = "physical_same_capability"
    LOGICAL = "logical"


class Multiplicity(str, Enum):
    ONE = "one"
    PLUS = "plus"
    STAR = "star"


MULTIPLICITY_SYMBOLS: dict[Multiplicity, str] = {
    Multiplicity.ONE: "1",
    Multiplicity.PLUS: "+",
    Multiplicity.STAR: "*",
}

# Non-capability node roles a connector endpoint may name.
SPECIAL_ENDPOINTS: frozenset[str] = frozenset(
    {
        "sensor",
        "actuator",
        "external_sensor",
        "external_actuator",
        "environment",
        "external_node",
    }
)

CAPABILITY_ENDPOINTS: frozenset[str] = frozenset(c.value for c in Capability)


@dataclass(frozen=True)
class Connector:
    """A typed, multiplicity-annotated link between two node roles."""

    endpoint_a: str
    endpoint_b: str
    kind: ConnectorKind
    multiplicity_a: Multiplicity = Multiplicity.ONE
    multiplicity_b: Multiplicity = Multiplicity.ONE

    def __post_init__(self) -> None:
        for endpoint in (self.endpoint_a, self.endpoint_b):
            if endpoint not in SPECIAL_ENDPOINTS | CAPABILITY_ENDPOINTS:
                raise ModelError(f"unknown connector endpoint role: {endpoint!r}")

    def capability_endpoints(self) -> set[str]:
        return {
            e for e in (self.endpoint_a, self.endpoint_b) if e in CAPABILITY_ENDPOINTS
        }


@dataclass(frozen=True)
class PatternDef:
    """One self-awareness architectural pattern: capabilities plus wiring."""

    id: str
    name: str
    capabilities: frozenset[Capability]
    meta_self_optional: bool = True
    connectors: tuple[Connector, ...] = ()
    characteristics: str = ""
    external_decision_links: bool = False


_CK = ConnectorKind
_M = Multiplicity


def _pattern_connectors(
    capabilities: frozenset[Capability],
    shared: bool = False,
    coordinated: bool = False,
) -> tuple[Connector, ...]:
    """Build the canonical wiring for a capability set.

    Sensing/actuating plumbing is shared by every pattern; knowledge flows
    upward from stimulus; `shared` adds cross-node sharing of the highest
    shared knowledge; `coordinated` adds direct decision links to external
    nodes.
    """
    connectors: list[Connector] = [
        Connector("environment", "sensor", _CK.PHYSICAL_INTER_CAPABILITY, _M.ONE, _M.PLUS),
        Connector("sensor", "stimulus", _CK.PHYSICAL_INTER_CAPABILITY, _M.PLUS, _M.ONE),
        Connector("stimulus", "actuator", _CK.PHYSICAL_INTER_CAPABILITY, _M.ONE, _M.PLUS),
        Connector("actuator", "environment", _CK.PHYSICAL_INTER_CAPABILITY, _M.PLUS, _M.ONE),
    ]
    has = capabilities.__contains__
    if has(Capability.INTERACTION):
        connectors.append(
            Connector("stimulus", "interaction", _CK.PHYSICAL_INTER_CAPABILITY)
        )
        connectors.append(
            Connector("external_sensor", "interaction", _CK.PHYSICAL_INTER_CAPABILITY, _M.PLUS, _M.ONE)
        )
        connectors.append(
            Connector("interaction", "external_actuator", _CK.PHYSICAL_INTER_CAPABILITY, _M.ONE, _M.PLUS)
        )
        connectors.append(
            Connector("interaction", "interaction", _CK.LOGICAL, _M.ONE, _M.STAR)
        )
    if has(Capability.TIME):
        connectors.append(Connector("stimulus", "time", _CK.PHYSICAL_INTER_CAPABILITY))
        if has(Capability.INTERACTION):
            connectors.append(Connector("time", "interaction", _CK.PHYSICAL_INTER_CAPABILITY))
            if shared:
                connectors.append(Connector("time", "time", _CK.LOGICAL, _M.ONE, _M.STAR))
    if has(Capability.GOAL):
        connectors.append(Connector("stimulus", "goal", _CK.PHYSICAL_INTER_CAPABILITY))
        if has(Capability.TIME):
            connectors.append(Connector("time", "goal", _CK.PHYSICAL_INTER_CAPABILITY))
        if has(Capability.INTERACTION):
            connectors.append(Connector("interaction", "goal", _CK.PHYSICAL_INTER_CAPABILITY))
            if shared:
                connectors.append(Connector("goal", "goal", _CK.LOGICAL, _M.ONE, _M.STAR))
    if coordinated:
        connectors.append(
            Connector("interaction", "interaction", _CK.PHYSICAL_SAME_CAPABILITY, _M.ONE, _M.PLUS)
        )
        connectors.append(
            Connector("interaction", "external_node", _CK.PHYSICAL_INTER_CAPABILITY, _M.ONE, _M.PLUS)
        )
    return tuple(connectors)


def _caps(*capabilities: Capability) -> frozenset[Capability]:
    return frozenset(capabilities)


_STIMULUS = Capability.STIMULUS
_INTERACTION = Capability.INTERACTION
_TIME = Capability.TIME
_GOAL = Capability.GOAL

_PATTERNS: tuple[PatternDef, ...] = (
    PatternDef(
        id="basic",
        name="Basic",
        capabilities=_caps(_STIMULUS),
        connectors=_pattern_connectors(_caps(_STIMULUS)),
        characteristics=(
            "For cases where some actions need to be triggered in order to "
            "cope with emergent events and stimuli."
        ),
    ),
    PatternDef(
        id="basic_information_sharing",
        name="Basic Information Sharing",
        capabilities=_caps(_STIMULUS, _INTERACTION),
        connectors=_pattern_connectors(_caps(_STIMULUS, _INTERACTION)),
        characteristics=(
            "For cases where more nodes may be required with loosely shared "
            "data to meet the scalability requirement of the system."
        ),
    ),
    PatternDef(
        id="coordinated_decision_making",
        name="Coordinated Decision-making",
        capabilities=_caps(_STIMULUS, _INTERACTION),
        connectors=_pattern_connectors(
            _caps(_STIMULUS, _INTERACTION), coordinated=True
        ),
        characteristics=(
            "For cases requiring consistent global decision making in a "
            "cooperative setting."
        ),
        external_decision_links=True,
    ),
    PatternDef(
        id="temporal_knowledge_sharing",
        name="Temporal Knowledge Sharing",
        capabilities=_caps(_STIMULUS, _INTERACTION, _TIME),
        connectors=_pattern_connectors(
            _caps(_STIMULUS, _INTERACTION, _TIME), shared=True
        ),
        characteristics=(
            "For cases where timing of actions and availability of historical "
            "knowledge have an impact on the integrity of information sharing "
            "in the software system."
        ),
    ),
    PatternDef(
        id="temporal_knowledge_aware",
        name="Temporal Knowledge Aware",
        capabilities=_caps(_STIMULUS, _TIME),
        connectors=_pattern_connectors(_caps(_STIMULUS, _TIME)),
        characteristics=(
            "For cases where timing of actions and availability of historical "
            "knowledge is required only at the local level."
        ),
    ),
    PatternDef(
        id="goal_sharing",
        name="Goal Sharing",
        capabilities=_caps(_STIMULUS, _INTERACTION, _GOAL),
        connectors=_pattern_connectors(
            _caps(_STIMULUS, _INTERACTION, _GOAL), shared=True
        ),
        characteristics=(
            "For cases where goal reasoning and optimization is required with "
            "strong consensus."
        ),
    ),
    PatternDef(
        id="temporal_goal_aware",
        name="Temporal Goal Aware",
        capabilities=_caps(_STIMULUS, _TIME, _GOAL),
        connectors=_pattern_connectors(_caps(_STIMULUS, _TIME, _GOAL)),
        characteristics=(
            "For cases where timing of actions and availability of historical "
            "knowledge are required for local optimization and reasoning of "
            "goal."
        ),
    ),
    PatternDef(
        id="fully_self_aware",
        name="Fully Self-Aware",
        capabilities=_caps(_STIMULUS, _INTERACTION, _TIME, _GOAL),
        connectors=_pattern_connectors(
            _caps(_STIMULUS, _INTERACTION, _TIME, _GOAL), shared=True
        ),
        characteristics=(
            "For cases where timing and historical knowledge is required for "
            "performing goal reasoning with strong consensus."
        ),
    ),
)


def pattern_catalog() -> list[PatternDef]:
    """The eight shipped self-awareness architectural patterns."""
    return list(_PATTERNS)


def pattern_by_id(pattern_id: str) -> PatternDef:
    for pattern in _PATTERNS:
        if pattern.id == pattern_id:
            return pattern
    raise ModelError(f"unknown pattern id: {pattern_id!r}")


# ---------------------------------------------------------------------------
# Validation reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    """Findings from a structural validation pass; empty means valid."""

    findings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.findings

    def __bool__(self) -> bool:
        return self.ok


def validate_pattern(pattern: PatternDef) -> ValidationReport:
    """Check a pattern definition against the composition rules.

    Stimulus-awareness is a prerequisite for every pattern; stimulus plus
    goal alone cannot form a pattern; connectors may only reference
    capabilities the pattern actually has.
    """
    findings: list[str] = []
    if Capability.STIMULUS not in pattern.capabilities:
        findings.append("stimulus missing: every pattern needs stimulus-awareness")
    if pattern.capabilities == _caps(_STIMULUS, _GOAL):
        findings.append(
            "goal cannot pair with stimulus alone: stimulus and goal cannot "
            "be the only capabilities of a pattern"
        )
    allowed = {c.value for c in pattern.capabilities}
    for i, connector in enumerate(pattern.connectors):
        for endpoint in connector.capability_endpoints():
            if endpoint not in allowed:
                findings.append(
                    f"connector {i} references capability {endpoint!r} absent "
                    "from the pattern"
                )
        if connector.kind is ConnectorKind.PHYSICAL_SAME_CAPABILITY:
            if connector.endpoint_a != connector.endpoint_b:
                findings.append(
                    f"connector {i} is same-capability but joins "
                    f"{connector.endpoint_a!r} and {connector.endpoint_b!r}"
                )
        elif connector.kind is ConnectorKind.PHYSICAL_INTER_CAPABILITY:
            if connector.endpoint_a == connector.endpoint_b:
                findings.append(
                    f"connector {i} is inter-capability but joins "
                    f"{connector.endpoint_a!r} with itself"
                )
    return ValidationReport(tuple(findings))


# ---------------------------------------------------------------------------
# Score configuration
# ---------------------------------------------------------------------------

TraitKey = tuple[Structurability, Tangibility]

_ST: TraitKey = (_S.STRUCTURAL, _T.TANGIBLE)
_SN: TraitKey = (_S.STRUCTURAL, _T.NON_TANGIBLE)
_NT: TraitKey = (_S.NON_STRUCTURAL, _T.TANGIBLE)
_NN: TraitKey = (_S.NON_STRUCTURAL, _T.NON_TANGIBLE)

TRAIT_KEYS: tuple[TraitKey, ...] = (_ST, _SN, _NT, _NN)

# Six-rung difficulty ladder, evenly spaced in [1, 2].
DEFAULT_RUNG_LABELS: dict[float, str] = {
    1.0: "very_easy",
    1.2: "easy",
    1.4: "moderate",
    1.6: "hard",
    1.8: "very_hard",
    2.0: "challenging",
}

DEFAULT_BENEFIT: dict[SynergyLevel, float] = {
    SynergyLevel.L0: 1.25,
    SynergyLevel.L1: 1.5,
    SynergyLevel.L2: 1.75,
    SynergyLevel.L3: 2.0,
}

DEFAULT_DIFFICULTY: dict[SynergyLevel, dict[TraitKey, float]] = {
    SynergyLevel.L1: {_ST: 1.0, _SN: 1.0, _NT: 1.0, _NN: 1.0},
    SynergyLevel.L2: {_ST: 1.2, _SN: 1.2, _NT: 1.4, _NN: 1.4},
    SynergyLevel.L3: {_ST: 1.4, _SN: 1.6, _NT: 1.8, _NN: 2.0},
}

DEFAULT_FORM_WEIGHTS: dict[SynergyForm, float] = {
    SynergyForm.SPECIFIC: 1.2,
    SynergyForm.GENERAL: 1.4,
}

LEVEL0_DIFFICULTY = 1.0


@dataclass(frozen=True)
class ScoreConfig:
    """Benefit table, difficulty table and form weights for Eq.-style scoring.

    All values live in [1, 2]; only the relative ranking is meaningful, so
    every table can be re-weighted per project as long as the ordering
    constraints hold (see `validate_score_config`).
    """

    w: Mapping[SynergyForm, float] = field(
        default_factory=lambda: dict(DEFAULT_FORM_WEIGHTS)
    )
    b: Mapping[SynergyLevel, float] = field(
        default_factory=lambda: dict(DEFAULT_BENEFIT)
    )
    d: Mapping[SynergyLevel, Mapping[TraitKey, float]] = field(
        default_factory=lambda: {
            level: dict(cells) for level, cells in DEFAULT_DIFFICULTY.items()
        }
    )
    d0: float = LEVEL0_DIFFICULTY
    rung_labels: Mapping[float, str] = field(
        default_factory=lambda: dict(DEFAULT_RUNG_LABELS)
    )

    def rung_label(self, value: float) -> str:
        """Label for a difficulty rung; nearest ladder entry for custom values."""
        if value in self.rung_labels:
            return self.rung_labels[value]
        if not self.rung_labels:
            return f"{value:g}"
        nearest = min(self.rung_labels, key=lambda r: (abs(r - value), r))
        return self.rung_labels[nearest]


def default_score_config() -> ScoreConfig:
    return ScoreConfig()


def validate_score_config(cfg: ScoreConfig) -> ValidationReport:
    """Check every ordering and range constraint on a score configuration."""
    findings: list[str] = []

    for form in FORM_ORDER:
        if form not in cfg.w:
            findings.append(f"w missing entry for form {form.value!r}")
        elif not 1.0 <= cfg.w[form] <= 2.0:
            findings.append(f"w({form.value})={cfg.w[form]:g} outside [1,2]")
    if all(f in cfg.w for f in FORM_ORDER):
        if cfg.w[SynergyForm.GENERAL] < cfg.w[SynergyForm.SPECIFIC]:
            findings.append("w(general) must be >= w(specific)")

    for level in SynergyLevel:
        if level not in cfg.b:
            findings.append(f"b missing entry for {level.label}")
        elif not 1.0 <= cfg.b[level] <= 2.0:
            findings.append(f"b({level.label})={cfg.b[level]:g} outside [1,2]")
    if all(level in cfg.b for level in SynergyLevel):
        pairs = list(zip(list(SynergyLevel)[:-1], list(SynergyLevel)[1:]))
        if any(cfg.b[lo] >= cfg.b[hi] for lo, hi in pairs):
            findings.append("benefit not increasing: b must be strictly increasing in level")

    if cfg.d0 != 1.0:
        findings.append(f"d0={cfg.d0:g} must be exactly 1")

    nonzero_levels = (SynergyLevel.L1, SynergyLevel.L2, SynergyLevel.L3)
    complete = True
    for level in nonzero_levels:
        cells = cfg.d.get(level, {})
        for key in TRAIT_KEYS:
            if key not in cells:
                findings.append(
                    f"d missing cell ({level.label}, {key[0].value}+{key[1].value})"
                )
                complete = False
            elif not 1.0 <= cells[key] <= 2.0:
                findings.append(
                    f"d({level.label}, {key[0].value}+{key[1].value})="
                    f"{cells[key]:g} outside [1,2]"
                )
            elif cfg.d0 > cells[key]:
                findings.append(
                    f"d({level.label}, {key[0].value}+{key[1].value}) below d0"
                )

    if complete:
        d1, d2, d3 = (cfg.d[level] for level in nonzero_levels)
        if len(set(d1.values())) != 1:
            findings.append("all L1 cells must be equal")
        for tangibility in (_T.TANGIBLE, _T.NON_TANGIBLE):
            if d2[(_S.NON_STRUCTURAL, tangibility)] < d2[(_S.STRUCTURAL, tangibility)]:
                findings.append(
                    "L2 must not be easier for non-structural than structural "
                    f"({tangibility.value})"
                )
        for structurability in (_S.STRUCTURAL, _S.NON_STRUCTURAL):
            if d2[(structurability, _T.TANGIBLE)] != d2[(structurability, _T.NON_TANGIBLE)]:
                findings.append(
                    "L2 must not vary with tangibility "
                    f"({structurability.value})"
                )
        if not (d3[_NN] >= d3[_NT] >= d3[_SN] >= d3[_ST]):
            findings.append(
                "L3 ordinal order broken: require d(N,N) >= d(N,T) >= d(S,N) >= d(S,T)"
            )
        for key in TRAIT_KEYS:
            if not (d1[key] <= d2[key] <= d3[key]):
                findings.append(
                    f"difficulty must be non-decreasing in level for cell "
                    f"{key[0].value}+{key[1].value}"
                )

    return ValidationReport(tuple(findings))


def capability_sort_key(capability: Capability) -> int:
    return CAPABILITY_ORDER.index(capability)


def sorted_capabilities(capabilities: Iterable[Capability]) -> list[Capability]:
    return sorted(capabilities, key=capability_sort_key)
