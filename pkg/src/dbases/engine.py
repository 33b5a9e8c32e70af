"""Synergy-slot modeling, constrained candidate enumeration, difficulty and
benefit scoring, Pareto analysis, and what-if rescoring.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Mapping, Optional, Sequence

from .model import (
    Capability,
    ExpertiseRepresentation,
    ModelError,
    ScoreConfig,
    SynergyForm,
    SynergyLevel,
    FORM_ORDER,
)

DEFAULT_OPTION_CAP = 1_000_000


class EngineError(ValueError):
    """Raised on invalid engine inputs."""


class OptionSpaceError(EngineError):
    """Raised when the unconstrained option space exceeds the enumeration cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(
            f"option space has {count} combinations, above the cap of {cap}"
        )
        self.count = count
        self.cap = cap


@dataclass(frozen=True)
class SynergySlot:
    """One (representation, capability) pair open for synergy.

    `allowed_levels`/`allowed_forms` bound the choices a candidate may make
    for this slot; `proficiency` is the engineer's normalized skill weight
    in [1, 2] covering both the representation and the underlying technique.
    """

    id: str
    representation: str
    capability: Capability
    allowed_levels: tuple[SynergyLevel, ...]
    allowed_forms: tuple[SynergyForm, ...]
    proficiency: float

    def __post_init__(self) -> None:
        if not self.id.strip():
            raise EngineError("slot id must be nonempty")
        if not self.allowed_levels:
            raise EngineError(f"slot {self.id!r}: allowed_levels must be nonempty")
        if not self.allowed_forms:
            raise EngineError(f"slot {self.id!r}: allowed_forms must be nonempty")
        if not 1.0 <= self.proficiency <= 2.0:
            raise EngineError(
                f"slot {self.id!r}: proficiency {self.proficiency:g} outside [1,2]"
            )
        object.__setattr__(
            self, "allowed_levels", tuple(sorted(set(self.allowed_levels)))
        )
        object.__setattr__(
            self,
            "allowed_forms",
            tuple(f for f in FORM_ORDER if f in set(self.allowed_forms)),
        )


@dataclass(frozen=True)
class SynergyConstraint:
    """Conditional level restriction: if one slot lands in `if_level_in`,
    another slot must land in `then_level_in`."""

    if_slot: str
    if_level_in: frozenset[SynergyLevel]
    then_slot: str
    then_level_in: frozenset[SynergyLevel]

    def __post_init__(self) -> None:
        if not self.if_level_in or not self.then_level_in:
            raise EngineError("constraint level sets must be nonempty")

    def satisfied_by(self, assignment: Mapping[str, "SlotChoice"]) -> bool:
        if assignment[self.if_slot].level not in self.if_level_in:
            return True
        return assignment[self.then_slot].level in self.then_level_in


@dataclass(frozen=True)
class SlotChoice:
    """A level (and, above level 0, a form) chosen for one slot."""

    level: SynergyLevel
    form: Optional[SynergyForm] = None

    def __post_init__(self) -> None:
        if self.level is SynergyLevel.L0 and self.form is not None:
            raise EngineError("level 0 carries no form")
        if self.level is not SynergyLevel.L0 and self.form is None:
            raise EngineError(f"level {self.level.label} requires a form")

    def pretty(self) -> str:
        if self.form is None:
            return self.level.label
        return f"{self.level.label};{self.form.value}"


@dataclass
class Candidate:
    """One complete level+form assignment across all synergy slots."""

    id: str
    assignment: dict[str, SlotChoice]
    benefit: Optional[float] = None
    difficulty: Optional[float] = None
    pareto: Optional[bool] = None
    shortlisted: bool = False


@dataclass
class AnalysisResult:
    """Scored candidates with Pareto flags, in canonical enumeration order."""

    slot_ids: tuple[str, ...]
    candidates: list[Candidate] = field(default_factory=list)

    @property
    def pareto_front(self) -> list[Candidate]:
        return [c for c in self.candidates if c.pareto]

    def candidate_by_id(self, candidate_id: str) -> Candidate:
        for candidate in self.candidates:
            if candidate.id == candidate_id:
                return candidate
        raise EngineError(f"unknown candidate id: {candidate_id!r}")

    def to_doc(self) -> dict:
        """JSON-ready document; scores carry full precision."""
        return {
            "slot_ids": list(self.slot_ids),
            "candidates": [
                {
                    "id": c.id,
                    "assignment": {
                        slot_id: {
                            "level": choice.level.label,
                            "form": choice.form.value if choice.form else None,
                        }
                        for slot_id, choice in c.assignment.items()
                    },
                    "B": c.benefit,
                    "D": c.difficulty,
                    "pareto": c.pareto,
                    "shortlisted": c.shortlisted,
                }
                for c in self.candidates
            ],
        }


def present(value: float, places: int = 2) -> str:
    """Half-up decimal presentation of a score.

    Scores are sums of small decimal fractions, so the true value is first
    recovered at 9 decimals before the final rounding; this keeps borderline
    halves (e.g. 11.865 stored as 11.8649999...) rounding the intended way.
    """
    stabilized = Decimal(repr(value)).quantize(Decimal("1e-9"), rounding=ROUND_HALF_UP)
    quantum = Decimal(1).scaleb(-places)
    return str(stabilized.quantize(quantum, rounding=ROUND_HALF_UP))


# ---------------------------------------------------------------------------
# Option space and enumeration
# ---------------------------------------------------------------------------

def slot_options(slot: SynergySlot) -> list[SlotChoice]:
    """All choices for one slot, levels ascending, specific before general.

    Level 0 contributes a single formless option; every other allowed level
    contributes one option per allowed form.
    """
    options: list[SlotChoice] = []
    for level in slot.allowed_levels:
        if level is SynergyLevel.L0:
            options.append(SlotChoice(level))
        else:
            options.extend(SlotChoice(level, form) for form in slot.allowed_forms)
    return options


def option_space_size(slots: Sequence[SynergySlot]) -> int:
    return math.prod(len(slot_options(slot)) for slot in slots)


def _check_slots(project) -> Sequence[SynergySlot]:
    slots = tuple(project.slots)
    if not slots:
        raise EngineError("project has no synergy slots; nothing to enumerate")
    return slots


def enumerate_candidates(project, cap: int = DEFAULT_OPTION_CAP) -> list[Candidate]:
    """All constraint-satisfying candidates, in deterministic order.

    The order is the lexicographic product of per-slot options with slots in
    declaration order; ids are assigned by position in the filtered list.
    Refuses option spaces above `cap` before enumerating anything.
    """
    slots = _check_slots(project)
    size = option_space_size(slots)
    if size > cap:
        raise OptionSpaceError(size, cap)
    constraints = tuple(project.constraints)
    slot_ids = [slot.id for slot in slots]
    candidates: list[Candidate] = []
    for combo in itertools.product(*(slot_options(slot) for slot in slots)):
        assignment = dict(zip(slot_ids, combo))
        if all(c.satisfied_by(assignment) for c in constraints):
            candidates.append(
                Candidate(id=f"C{len(candidates) + 1:04d}", assignment=assignment)
            )
    return candidates


def count_candidates(project, cap: int = DEFAULT_OPTION_CAP) -> int:
    """Number of valid candidates; closed-form product when unconstrained."""
    slots = _check_slots(project)
    if not tuple(project.constraints):
        return option_space_size(slots)
    return len(enumerate_candidates(project, cap=cap))


# ---------------------------------------------------------------------------
# Scoring
# ---------------------------------------------------------------------------

def difficulty_rung(
    level: SynergyLevel,
    traits,
    cfg: ScoreConfig,
) -> tuple[float, str]:
    """Raw difficulty rung and ladder label for a non-zero synergy level."""
    if level is SynergyLevel.L0:
        raise EngineError("level 0 difficulty is the constant d0, not a rung")
    value = cfg.d[level][traits.key()]
    return value, cfg.rung_label(value)


def _slot_lookup(project) -> dict[str, SynergySlot]:
    return {slot.id: slot for slot in project.slots}


def _rep_lookup(project) -> dict[str, ExpertiseRepresentation]:
    return {rep.id: rep for rep in project.representations}


def _score_terms(
    candidate: Candidate,
    project,
    cfg: ScoreConfig,
    proficiency: Mapping[str, float],
):
    reps = _rep_lookup(project)
    for slot in project.slots:
        choice = candidate.assignment[slot.id]
        p = proficiency[slot.id]
        if choice.level is SynergyLevel.L0:
            yield p * cfg.b[SynergyLevel.L0], cfg.d0 / p
        else:
            weight = cfg.w[choice.form]
            rung = cfg.d[choice.level][reps[slot.representation].traits.key()]
            yield weight * p * cfg.b[choice.level], weight * rung / p


def _effective_proficiency(project, overrides: Optional[Mapping[str, float]] = None):
    values = {slot.id: slot.proficiency for slot in project.slots}
    if overrides:
        values.update(overrides)
    return values


def candidate_benefit(candidate: Candidate, project) -> float:
    """Overall expected benefit: proficiency-weighted benefit terms, with the
    form weight applied to every synergy above level 0."""
    cfg = project.score_config
    terms = _score_terms(candidate, project, cfg, _effective_proficiency(project))
    return sum(b for b, _ in terms)


def candidate_difficulty(candidate: Candidate, project) -> float:
    """Overall difficulty: per-synergy difficulty over proficiency, summed."""
    cfg = project.score_config
    terms = _score_terms(candidate, project, cfg, _effective_proficiency(project))
    return sum(d for _, d in terms)


def score_candidates(
    candidates: Iterable[Candidate],
    project,
    cfg: Optional[ScoreConfig] = None,
    proficiency: Optional[Mapping[str, float]] = None,
) -> list[Candidate]:
    """Fill in benefit/difficulty on every candidate, in place."""
    cfg = cfg or project.score_config
    p = _effective_proficiency(project, proficiency)
    result = list(candidates)
    for candidate in result:
        benefit = 0.0
        difficulty = 0.0
        for b, d in _score_terms(candidate, project, cfg, p):
            benefit += b
            difficulty += d
        candidate.benefit = benefit
        candidate.difficulty = difficulty
    return result


# ---------------------------------------------------------------------------
# Pareto analysis
# ---------------------------------------------------------------------------

def pareto(candidates: list[Candidate]) -> list[Candidate]:
    """Flag the non-dominated candidates (minimize D, maximize B).

    A candidate is dominated when another is at least as good in both
    objectives and strictly better in one; exact ties are all kept on the
    front. Single sorted sweep; grouped by equal difficulty so that
    duplicates survive.
    """
    for candidate in candidates:
        if candidate.benefit is None or candidate.difficulty is None:
            raise EngineError(f"candidate {candidate.id} is not scored")

    by_difficulty = sorted(candidates, key=lambda c: (c.difficulty, -c.benefit))
    best_lower = -math.inf
    index = 0
    while index < len(by_difficulty):
        group_end = index
        d = by_difficulty[index].difficulty
        while group_end < len(by_difficulty) and by_difficulty[group_end].difficulty == d:
            group_end += 1
        group = by_difficulty[index:group_end]
        group_best = max(c.benefit for c in group)
        for candidate in group:
            dominated = candidate.benefit < group_best or candidate.benefit <= best_lower
            candidate.pareto = not dominated
        best_lower = max(best_lower, group_best)
        index = group_end
    return candidates


def apply_shortlist(candidates: list[Candidate], shortlist: Iterable[str]) -> None:
    wanted = set(shortlist)
    for candidate in candidates:
        candidate.shortlisted = candidate.id in wanted


def analyze(project, cap: int = DEFAULT_OPTION_CAP) -> AnalysisResult:
    """Enumerate, score and Pareto-flag a project in one deterministic pass."""
    candidates = enumerate_candidates(project, cap=cap)
    score_candidates(candidates, project)
    pareto(candidates)
    apply_shortlist(candidates, project.shortlist)
    return AnalysisResult(
        slot_ids=tuple(slot.id for slot in project.slots),
        candidates=candidates,
    )


# ---------------------------------------------------------------------------
# What-if rescoring
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WhatIfOverrides:
    """Transient re-weighting of form weights and per-slot proficiencies."""

    w: Mapping[SynergyForm, float] = field(default_factory=dict)
    p: Mapping[str, float] = field(default_factory=dict)


class OverrideError(EngineError):
    """Raised for out-of-range or dangling what-if overrides."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _validated_overrides(project, overrides: WhatIfOverrides) -> WhatIfOverrides:
    slot_ids = {slot.id for slot in project.slots}
    for form, value in overrides.w.items():
        if not isinstance(form, SynergyForm):
            raise OverrideError("/w", f"unknown form {form!r}")
        if not 1.0 <= value <= 2.0:
            raise OverrideError(f"/w/{form.value}", f"{value:g} outside [1,2]")
    for slot_id, value in overrides.p.items():
        if slot_id not in slot_ids:
            raise OverrideError(f"/p/{slot_id}", "unknown slot id")
        if not 1.0 <= value <= 2.0:
            raise OverrideError(f"/p/{slot_id}", f"{value:g} outside [1,2]")
    return overrides


def whatif(
    project,
    overrides: Optional[WhatIfOverrides] = None,
    cap: int = DEFAULT_OPTION_CAP,
) -> AnalysisResult:
    """Rescore the project under transient overrides; stored state untouched."""
    overrides = _validated_overrides(project, overrides or WhatIfOverrides())
    base_cfg = project.score_config
    cfg = base_cfg
    if overrides.w:
        merged_w = dict(base_cfg.w)
        merged_w.update(overrides.w)
        cfg = replace(base_cfg, w=merged_w)
    candidates = enumerate_candidates(project, cap=cap)
    score_candidates(candidates, project, cfg=cfg, proficiency=overrides.p)
    pareto(candidates)
    apply_shortlist(candidates, project.shortlist)
    return AnalysisResult(
        slot_ids=tuple(slot.id for slot in project.slots),
        candidates=candidates,
    )


def check_slot_against(
    slot: SynergySlot,
    pattern_capabilities: frozenset[Capability],
    representation: ExpertiseRepresentation,
) -> list[str]:
    """Referential checks a slot must pass within its project context."""
    problems: list[str] = []
    if slot.capability not in pattern_capabilities:
        problems.append(
            f"capability {slot.capability.value!r} not in pattern capabilities"
        )
    only_l0 = slot.allowed_levels == (SynergyLevel.L0,)
    if not only_l0 and slot.capability not in representation.compatible_capabilities:
        problems.append(
            f"capability {slot.capability.value!r} not compatible with "
            f"representation {representation.id!r}"
        )
    return problems
