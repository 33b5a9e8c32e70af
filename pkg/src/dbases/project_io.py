"""Project file schema (`*.dbases.json`), strict validation with JSON-pointer
error paths, canonical serialization, and a revisioned on-disk store.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
import threading
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence, Union

from . import model
from .engine import SynergyConstraint, SynergySlot, check_slot_against
from .model import (
    Capability,
    Category,
    Connector,
    ConnectorKind,
    ExpertiseRepresentation,
    Multiplicity,
    PatternDef,
    ScoreConfig,
    Structurability,
    SynergyForm,
    SynergyLevel,
    Tangibility,
    TraitPair,
    compat_defaults,
    default_traits,
    pattern_by_id,
    trait_consistency_violations,
    validate_pattern,
    validate_score_config,
)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ValidationIssue:
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.message}"


class ProjectError(Exception):
    """Base error for project loading and storage."""


class ProjectValidationError(ProjectError):
    """Carries every issue found in a project document, with pointer paths."""

    def __init__(self, issues: Sequence[ValidationIssue]):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues) or "invalid project")


class ProjectParseError(ProjectError):
    """Malformed JSON, reported with line and column."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"parse error at line {line} column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Project:
    """A fully validated analysis project."""

    meta_name: str
    meta_description: str
    pattern: PatternDef
    representations: tuple[ExpertiseRepresentation, ...]
    slots: tuple[SynergySlot, ...]
    constraints: tuple[SynergyConstraint, ...] = ()
    score_config: ScoreConfig = field(default_factory=model.default_score_config)
    shortlist: tuple[str, ...] = ()
    pattern_ref: Optional[str] = None
    schema_version: int = SCHEMA_VERSION

    def representation_by_id(self, rep_id: str) -> ExpertiseRepresentation:
        for rep in self.representations:
            if rep.id == rep_id:
                return rep
        raise KeyError(rep_id)

    def slot_by_id(self, slot_id: str) -> SynergySlot:
        for slot in self.slots:
            if slot.id == slot_id:
                return slot
        raise KeyError(slot_id)

    def with_shortlist(self, shortlist: Sequence[str]) -> "Project":
        return replace(self, shortlist=tuple(shortlist))


# ---------------------------------------------------------------------------
# Document walking helpers
# ---------------------------------------------------------------------------

class _Walk:
    """Accumulates validation issues with JSON-pointer paths."""

    def __init__(self) -> None:
        self.issues: list[ValidationIssue] = []

    def issue(self, path: str, message: str) -> None:
        self.issues.append(ValidationIssue(path, message))

    def object(self, value: Any, path: str, allowed: set[str], required: set[str]) -> bool:
        if not isinstance(value, dict):
            self.issue(path or "/", "expected an object")
            return False
        ok = True
        for key in sorted(value):
            if key not in allowed:
                self.issue(f"{path}/{key}", "unknown field")
                ok = False
        for key in sorted(required):
            if key not in value:
                self.issue(f"{path}/{key}", "required field missing")
                ok = False
        return ok

    def string(self, value: Any, path: str, nonempty: bool = True) -> Optional[str]:
        if not isinstance(value, str):
            self.issue(path, "expected a string")
            return None
        if nonempty and not value.strip():
            self.issue(path, "must be nonempty")
            return None
        return value

    def number(self, value: Any, path: str) -> Optional[float]:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.issue(path, "expected a number")
            return None
        return float(value)

    def enum(self, value: Any, path: str, enum_cls, label: str):
        if isinstance(value, str):
            try:
                return enum_cls(value)
            except ValueError:
                pass
        choices = ", ".join(e.value for e in enum_cls)
        self.issue(path, f"invalid {label} {value!r} (expected one of: {choices})")
        return None

    def level(self, value: Any, path: str) -> Optional[SynergyLevel]:
        if isinstance(value, str) and value in SynergyLevel.__members__:
            return SynergyLevel[value]
        self.issue(path, f"invalid level {value!r} (expected L0..L3)")
        return None


def _parse_category(walk: _Walk, value: Any, path: str) -> Optional[Category]:
    if isinstance(value, str):
        if value.strip().lower() in model.BUILTIN_CATEGORY_NAMES:
            return Category(value)
        walk.issue(
            path,
            f"unknown built-in category {value!r}; use {{\"other\": <name>}} "
            "for custom categories",
        )
        return None
    if isinstance(value, dict):
        if not walk.object(value, path, {"other"}, {"other"}):
            return None
        name = walk.string(value["other"], f"{path}/other")
        if name is None:
            return None
        if name.strip().lower() in model.BUILTIN_CATEGORY_NAMES:
            walk.issue(f"{path}/other", f"{name!r} shadows a built-in category")
            return None
        return Category(name)
    walk.issue(path, "expected a category name or {\"other\": <name>}")
    return None


def _parse_traits(
    walk: _Walk, value: Any, path: str, category: Optional[Category]
) -> Optional[TraitPair]:
    declared = TraitPair()
    if value is not None:
        if not walk.object(value, path, {"structurability", "tangibility"}, set()):
            return None
        structurability = None
        tangibility = None
        if "structurability" in value:
            structurability = walk.enum(
                value["structurability"],
                f"{path}/structurability",
                Structurability,
                "structurability",
            )
        if "tangibility" in value:
            tangibility = walk.enum(
                value["tangibility"], f"{path}/tangibility", Tangibility, "tangibility"
            )
        declared = TraitPair(structurability, tangibility)
    if category is None:
        return None
    traits = default_traits(category).merged_with(declared)
    if traits.structurability is None:
        walk.issue(
            f"{path}/structurability",
            f"not determined by category {category.name!r}; declare it explicitly",
        )
        return None
    if traits.tangibility is None:
        walk.issue(
            f"{path}/tangibility",
            f"not determined by category {category.name!r}; declare it explicitly",
        )
        return None
    for message in trait_consistency_violations(category, traits):
        walk.issue(path, message)
        return None
    return traits


def _parse_representation(
    walk: _Walk, value: Any, path: str
) -> Optional[ExpertiseRepresentation]:
    allowed = {"id", "name", "category", "traits", "compatible_capabilities"}
    if not walk.object(value, path, allowed, {"id", "name", "category"}):
        return None
    rep_id = walk.string(value.get("id"), f"{path}/id")
    name = walk.string(value.get("name"), f"{path}/name")
    category = _parse_category(walk, value.get("category"), f"{path}/category")
    traits = _parse_traits(walk, value.get("traits"), f"{path}/traits", category)

    caps: Optional[frozenset[Capability]] = None
    if "compatible_capabilities" in value:
        raw = value["compatible_capabilities"]
        if not isinstance(raw, list):
            walk.issue(f"{path}/compatible_capabilities", "expected a list")
        else:
            parsed = []
            for i, item in enumerate(raw):
                cap = walk.enum(
                    item, f"{path}/compatible_capabilities/{i}", Capability, "capability"
                )
                if cap is not None:
                    parsed.append(cap)
            caps = frozenset(parsed)
            if not caps and not raw:
                walk.issue(
                    f"{path}/compatible_capabilities",
                    "must name at least one capability",
                )
    elif name is not None and category is not None:
        caps = compat_defaults(name)
        if not caps:
            caps = compat_defaults(category)
        if not caps:
            walk.issue(
                f"{path}/compatible_capabilities",
                f"no default compatibility known for {name!r}; declare "
                "compatible_capabilities explicitly",
            )
            caps = None

    if None in (rep_id, name, category, traits) or caps is None or not caps:
        return None
    try:
        return ExpertiseRepresentation(
            id=rep_id, name=name, category=category, traits=traits,
            compatible_capabilities=caps,
        )
    except model.ModelError as exc:
        walk.issue(path, str(exc))
        return None


def _parse_connector(walk: _Walk, value: Any, path: str) -> Optional[Connector]:
    allowed = {"endpoint_a", "endpoint_b", "kind", "multiplicity_a", "multiplicity_b"}
    if not walk.object(value, path, allowed, {"endpoint_a", "endpoint_b", "kind"}):
        return None
    roles = model.SPECIAL_ENDPOINTS | model.CAPABILITY_ENDPOINTS
    endpoints = {}
    for side in ("endpoint_a", "endpoint_b"):
        endpoint = walk.string(value.get(side), f"{path}/{side}")
        if endpoint is not None and endpoint not in roles:
            walk.issue(f"{path}/{side}", f"unknown endpoint role {endpoint!r}")
            endpoint = None
        endpoints[side] = endpoint
    kind = walk.enum(value.get("kind"), f"{path}/kind", ConnectorKind, "connector kind")
    mults = {}
    for side in ("multiplicity_a", "multiplicity_b"):
        if side in value:
            mults[side] = walk.enum(value[side], f"{path}/{side}", Multiplicity, "multiplicity")
        else:
            mults[side] = Multiplicity.ONE
    if None in endpoints.values() or kind is None or None in mults.values():
        return None
    return Connector(
        endpoint_a=endpoints["endpoint_a"],
        endpoint_b=endpoints["endpoint_b"],
        kind=kind,
        multiplicity_a=mults["multiplicity_a"],
        multiplicity_b=mults["multiplicity_b"],
    )


def _parse_pattern(walk: _Walk, value: Any, path: str) -> tuple[Optional[PatternDef], Optional[str]]:
    if isinstance(value, str):
        try:
            return pattern_by_id(value), value
        except model.ModelError:
            known = ", ".join(p.id for p in model.pattern_catalog())
            walk.issue(path, f"unknown pattern id {value!r} (catalog: {known})")
            return None, None
    allowed = {
        "id", "name", "capabilities", "meta_self_optional", "connectors",
        "characteristics", "external_decision_links",
    }
    if not walk.object(value, path, allowed, {"id", "name", "capabilities"}):
        return None, None
    pattern_id = walk.string(value.get("id"), f"{path}/id")
    name = walk.string(value.get("name"), f"{path}/name")
    caps_raw = value.get("capabilities")
    caps: Optional[frozenset[Capability]] = None
    if not isinstance(caps_raw, list) or not caps_raw:
        walk.issue(f"{path}/capabilities", "expected a nonempty list")
    else:
        parsed = []
        for i, item in enumerate(caps_raw):
            cap = walk.enum(item, f"{path}/capabilities/{i}", Capability, "capability")
            if cap is not None:
                parsed.append(cap)
        if len(parsed) == len(caps_raw):
            caps = frozenset(parsed)
    connectors: list[Connector] = []
    if "connectors" in value:
        if not isinstance(value["connectors"], list):
            walk.issue(f"{path}/connectors", "expected a list")
        else:
            for i, item in enumerate(value["connectors"]):
                connector = _parse_connector(walk, item, f"{path}/connectors/{i}")
                if connector is not None:
                    connectors.append(connector)
    characteristics = value.get("characteristics", "")
    if not isinstance(characteristics, str):
        walk.issue(f"{path}/characteristics", "expected a string")
        characteristics = ""
    meta_self_optional = value.get("meta_self_optional", True)
    external_links = value.get("external_decision_links", False)
    for flag_name, flag in (("meta_self_optional", meta_self_optional),
                            ("external_decision_links", external_links)):
        if not isinstance(flag, bool):
            walk.issue(f"{path}/{flag_name}", "expected a boolean")
            return None, None
    if pattern_id is None or name is None or caps is None:
        return None, None
    pattern = PatternDef(
        id=pattern_id,
        name=name,
        capabilities=caps,
        meta_self_optional=meta_self_optional,
        connectors=tuple(connectors),
        characteristics=characteristics,
        external_decision_links=external_links,
    )
    report = validate_pattern(pattern)
    for finding in report.findings:
        walk.issue(path, finding)
    if not report.ok:
        return None, None
    return pattern, None


def _parse_level_list(walk: _Walk, value: Any, path: str) -> Optional[tuple[SynergyLevel, ...]]:
    if not isinstance(value, list) or not value:
        walk.issue(path, "expected a nonempty list of levels")
        return None
    levels = []
    for i, item in enumerate(value):
        level = walk.level(item, f"{path}/{i}")
        if level is None:
            return None
        levels.append(level)
    return tuple(levels)


def _parse_slot(walk: _Walk, value: Any, path: str) -> Optional[SynergySlot]:
    allowed = {"id", "representation", "capability", "allowed_levels",
               "allowed_forms", "proficiency"}
    required = {"id", "representation", "capability", "allowed_levels",
                "allowed_forms", "proficiency"}
    if not walk.object(value, path, allowed, required):
        return None
    slot_id = walk.string(value.get("id"), f"{path}/id")
    rep_ref = walk.string(value.get("representation"), f"{path}/representation")
    capability = walk.enum(value.get("capability"), f"{path}/capability", Capability, "capability")
    levels = _parse_level_list(walk, value.get("allowed_levels"), f"{path}/allowed_levels")
    forms_raw = value.get("allowed_forms")
    forms: Optional[tuple[SynergyForm, ...]] = None
    if not isinstance(forms_raw, list) or not forms_raw:
        walk.issue(f"{path}/allowed_forms", "expected a nonempty list of forms")
    else:
        parsed = []
        for i, item in enumerate(forms_raw):
            form = walk.enum(item, f"{path}/allowed_forms/{i}", SynergyForm, "form")
            if form is not None:
                parsed.append(form)
        if len(parsed) == len(forms_raw):
            forms = tuple(parsed)
    proficiency = walk.number(value.get("proficiency"), f"{path}/proficiency")
    if proficiency is not None and not 1.0 <= proficiency <= 2.0:
        walk.issue(f"{path}/proficiency", f"{proficiency:g} outside [1,2]")
        proficiency = None
    if None in (slot_id, rep_ref, capability, levels, forms, proficiency):
        return None
    return SynergySlot(
        id=slot_id,
        representation=rep_ref,
        capability=capability,
        allowed_levels=levels,
        allowed_forms=forms,
        proficiency=proficiency,
    )


def _parse_constraint(
    walk: _Walk, value: Any, path: str, slot_ids: set[str]
) -> Optional[SynergyConstraint]:
    allowed = {"if_slot", "if_level_in", "then_slot", "then_level_in"}
    if not walk.object(value, path, allowed, allowed):
        return None
    if_slot = walk.string(value.get("if_slot"), f"{path}/if_slot")
    then_slot = walk.string(value.get("then_slot"), f"{path}/then_slot")
    if_levels = _parse_level_list(walk, value.get("if_level_in"), f"{path}/if_level_in")
    then_levels = _parse_level_list(walk, value.get("then_level_in"), f"{path}/then_level_in")
    for ref, ref_path in ((if_slot, "if_slot"), (then_slot, "then_slot")):
        if ref is not None and ref not in slot_ids:
            walk.issue(f"{path}/{ref_path}", f"unknown slot id {ref!r}")
            return None
    if None in (if_slot, then_slot, if_levels, then_levels):
        return None
    return SynergyConstraint(
        if_slot=if_slot,
        if_level_in=frozenset(if_levels),
        then_slot=then_slot,
        then_level_in=frozenset(then_levels),
    )


_TRAIT_CELL_KEYS: dict[str, model.TraitKey] = {
    "structural_tangible": (Structurability.STRUCTURAL, Tangibility.TANGIBLE),
    "structural_non_tangible": (Structurability.STRUCTURAL, Tangibility.NON_TANGIBLE),
    "non_structural_tangible": (Structurability.NON_STRUCTURAL, Tangibility.TANGIBLE),
    "non_structural_non_tangible": (
        Structurability.NON_STRUCTURAL,
        Tangibility.NON_TANGIBLE,
    ),
}


def _parse_score_config(walk: _Walk, value: Any, path: str) -> Optional[ScoreConfig]:
    if value is None:
        return model.default_score_config()
    if not walk.object(value, path, {"w", "b", "d", "rung_labels"}, set()):
        return None
    cfg = model.default_score_config()
    w = dict(cfg.w)
    b = dict(cfg.b)
    d = {level: dict(cells) for level, cells in cfg.d.items()}
    rung_labels = dict(cfg.rung_labels)

    if "w" in value:
        spec = value["w"]
        names = {f.value for f in SynergyForm}
        if walk.object(spec, f"{path}/w", names, names):
            parsed_w = {}
            for form in SynergyForm:
                weight = walk.number(spec[form.value], f"{path}/w/{form.value}")
                if weight is not None:
                    parsed_w[form] = weight
            if len(parsed_w) == len(names):
                w = parsed_w
    if "b" in value:
        spec = value["b"]
        names = {level.label for level in SynergyLevel}
        if walk.object(spec, f"{path}/b", names, names):
            parsed_b = {}
            for level in SynergyLevel:
                benefit = walk.number(spec[level.label], f"{path}/b/{level.label}")
                if benefit is not None:
                    parsed_b[level] = benefit
            if len(parsed_b) == len(names):
                b = parsed_b
    if "d" in value:
        spec = value["d"]
        level_names = {"L1", "L2", "L3"}
        if walk.object(spec, f"{path}/d", level_names, level_names):
            parsed_d = {}
            for level_name in sorted(level_names):
                cells_spec = spec[level_name]
                cell_names = set(_TRAIT_CELL_KEYS)
                if not walk.object(cells_spec, f"{path}/d/{level_name}", cell_names, cell_names):
                    continue
                cells = {}
                for cell_name, key in _TRAIT_CELL_KEYS.items():
                    rung = walk.number(cells_spec[cell_name], f"{path}/d/{level_name}/{cell_name}")
                    if rung is not None:
                        cells[key] = rung
                if len(cells) == len(_TRAIT_CELL_KEYS):
                    parsed_d[SynergyLevel[level_name]] = cells
            if len(parsed_d) == len(level_names):
                d = parsed_d
    if "rung_labels" in value:
        spec = value["rung_labels"]
        if not isinstance(spec, dict):
            walk.issue(f"{path}/rung_labels", "expected an object")
        else:
            parsed_labels = {}
            for key in sorted(spec):
                try:
                    rung = float(key)
                except ValueError:
                    walk.issue(f"{path}/rung_labels/{key}", "key must be numeric")
                    continue
                label = walk.string(spec[key], f"{path}/rung_labels/{key}")
                if label is not None:
                    parsed_labels[rung] = label
            if parsed_labels:
                rung_labels = parsed_labels

    result = ScoreConfig(w=w, b=b, d=d, rung_labels=rung_labels)
    report = validate_score_config(result)
    for finding in report.findings:
        walk.issue(path, finding)
    if not report.ok:
        return None
    return result


# ---------------------------------------------------------------------------
# load / save
# ---------------------------------------------------------------------------

def load_doc(doc: Any) -> Project:
    """Validate a parsed JSON document into a Project.

    Strict: unknown fields are rejected so typos cannot silently skew an
    analysis. All problems are collected and reported together with their
    JSON-pointer paths.
    """
    walk = _Walk()
    allowed = {"schema_version", "meta", "pattern", "representations", "slots",
               "constraints", "score_config", "shortlist"}
    required = {"schema_version", "meta", "pattern", "representations", "slots"}
    if not walk.object(doc, "", allowed, required):
        raise ProjectValidationError(walk.issues)

    version = doc["schema_version"]
    if version != SCHEMA_VERSION:
        walk.issue("/schema_version", f"unsupported schema version {version!r}")

    meta_name = ""
    meta_description = ""
    if walk.object(doc["meta"], "/meta", {"name", "description"}, {"name"}):
        meta_name = walk.string(doc["meta"].get("name"), "/meta/name") or ""
        description = doc["meta"].get("description", "")
        if not isinstance(description, str):
            walk.issue("/meta/description", "expected a string")
        else:
            meta_description = description

    pattern, pattern_ref = _parse_pattern(walk, doc["pattern"], "/pattern")

    representations: list[ExpertiseRepresentation] = []
    reps_raw = doc["representations"]
    if not isinstance(reps_raw, list):
        walk.issue("/representations", "expected a list")
    else:
        seen: set[str] = set()
        for i, item in enumerate(reps_raw):
            rep = _parse_representation(walk, item, f"/representations/{i}")
            if rep is not None:
                if rep.id in seen:
                    walk.issue(f"/representations/{i}/id", f"duplicate id {rep.id!r}")
                else:
                    seen.add(rep.id)
                    representations.append(rep)

    slots: list[SynergySlot] = []
    slots_raw = doc["slots"]
    if not isinstance(slots_raw, list):
        walk.issue("/slots", "expected a list")
    elif not slots_raw:
        walk.issue("/slots", "a project needs at least one synergy slot")
    else:
        rep_ids = {rep.id: rep for rep in representations}
        seen_slots: set[str] = set()
        for i, item in enumerate(slots_raw):
            slot = _parse_slot(walk, item, f"/slots/{i}")
            if slot is None:
                continue
            if slot.id in seen_slots:
                walk.issue(f"/slots/{i}/id", f"duplicate id {slot.id!r}")
                continue
            seen_slots.add(slot.id)
            rep = rep_ids.get(slot.representation)
            if rep is None:
                walk.issue(
                    f"/slots/{i}/representation",
                    f"unknown representation id {slot.representation!r}",
                )
                continue
            if pattern is not None:
                for problem in check_slot_against(slot, pattern.capabilities, rep):
                    walk.issue(f"/slots/{i}", problem)
            slots.append(slot)

    constraints: list[SynergyConstraint] = []
    if "constraints" in doc:
        raw = doc["constraints"]
        if not isinstance(raw, list):
            walk.issue("/constraints", "expected a list")
        else:
            slot_ids = {slot.id for slot in slots}
            for i, item in enumerate(raw):
                constraint = _parse_constraint(walk, item, f"/constraints/{i}", slot_ids)
                if constraint is not None:
                    constraints.append(constraint)

    score_config = _parse_score_config(walk, doc.get("score_config"), "/score_config")

    shortlist: list[str] = []
    if "shortlist" in doc:
        raw = doc["shortlist"]
        if not isinstance(raw, list):
            walk.issue("/shortlist", "expected a list")
        else:
            for i, item in enumerate(raw):
                candidate_id = walk.string(item, f"/shortlist/{i}")
                if candidate_id is not None:
                    shortlist.append(candidate_id)

    if walk.issues:
        raise ProjectValidationError(walk.issues)
    assert pattern is not None and score_config is not None
    return Project(
        meta_name=meta_name,
        meta_description=meta_description,
        pattern=pattern,
        representations=tuple(representations),
        slots=tuple(slots),
        constraints=tuple(constraints),
        score_config=score_config,
        shortlist=tuple(shortlist),
        pattern_ref=pattern_ref,
    )


def loads(data: Union[str, bytes]) -> Project:
    """Parse and validate a project from JSON text."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ProjectParseError(exc.lineno, exc.colno, exc.msg) from exc
    return load_doc(doc)


def load(source: Union[str, Path, bytes]) -> Project:
    """Load a project from a file path or raw JSON bytes."""
    if isinstance(source, bytes):
        return loads(source)
    return loads(Path(source).read_text(encoding="utf-8"))


def _category_doc(category: Category):
    if category.is_builtin:
        return category.name
    return {"other": category.name}


def _connector_doc(connector: Connector) -> dict:
    return {
        "endpoint_a": connector.endpoint_a,
        "endpoint_b": connector.endpoint_b,
        "kind": connector.kind.value,
        "multiplicity_a": connector.multiplicity_a.value,
        "multiplicity_b": connector.multiplicity_b.value,
    }


def _pattern_doc(project: Project):
    if project.pattern_ref is not None:
        return project.pattern_ref
    pattern = project.pattern
    return {
        "id": pattern.id,
        "name": pattern.name,
        "capabilities": [c.value for c in model.sorted_capabilities(pattern.capabilities)],
        "meta_self_optional": pattern.meta_self_optional,
        "connectors": [_connector_doc(c) for c in pattern.connectors],
        "characteristics": pattern.characteristics,
        "external_decision_links": pattern.external_decision_links,
    }


def _score_config_doc(cfg: ScoreConfig) -> dict:
    cell_names = {key: name for name, key in _TRAIT_CELL_KEYS.items()}
    return {
        "w": {form.value: cfg.w[form] for form in SynergyForm},
        "b": {level.label: cfg.b[level] for level in SynergyLevel},
        "d": {
            level.label: {
                cell_names[key]: cfg.d[level][key] for key in model.TRAIT_KEYS
            }
            for level in (SynergyLevel.L1, SynergyLevel.L2, SynergyLevel.L3)
        },
        "rung_labels": {repr(rung): label for rung, label in cfg.rung_labels.items()},
    }


def to_doc(project: Project) -> dict:
    """Fully explicit document for a project (defaults materialized)."""
    return {
        "schema_version": project.schema_version,
        "meta": {"name": project.meta_name, "description": project.meta_description},
        "pattern": _pattern_doc(project),
        "representations": [
            {
                "id": rep.id,
                "name": rep.name,
                "category": _category_doc(rep.category),
                "traits": {
                    "structurability": rep.traits.structurability.value,
                    "tangibility": rep.traits.tangibility.value,
                },
                "compatible_capabilities": [
                    c.value
                    for c in model.sorted_capabilities(rep.compatible_capabilities)
                ],
            }
            for rep in project.representations
        ],
        "slots": [
            {
                "id": slot.id,
                "representation": slot.representation,
                "capability": slot.capability.value,
                "allowed_levels": [level.label for level in slot.allowed_levels],
                "allowed_forms": [form.value for form in slot.allowed_forms],
                "proficiency": slot.proficiency,
            }
            for slot in project.slots
        ],
        "constraints": [
            {
                "if_slot": c.if_slot,
                "if_level_in": [level.label for level in sorted(c.if_level_in)],
                "then_slot": c.then_slot,
                "then_level_in": [level.label for level in sorted(c.then_level_in)],
            }
            for c in project.constraints
        ],
        "score_config": _score_config_doc(project.score_config),
        "shortlist": list(project.shortlist),
    }


def dumps(project: Project) -> str:
    """Canonical serialization: sorted keys, 2-space indent, trailing newline."""
    return json.dumps(to_doc(project), indent=2, sort_keys=True) + "\n"


def save(project: Project, path: Union[str, Path]) -> None:
    path = Path(path)
    try:
        path.write_text(dumps(project), encoding="utf-8")
    except OSError as exc:
        raise ProjectError(f"cannot write {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# Disk store with optimistic concurrency
# ---------------------------------------------------------------------------

class StoreNotFoundError(ProjectError):
    def __init__(self, project_id: str):
        super().__init__(f"no project with id {project_id!r}")
        self.project_id = project_id


class StoreConflictError(ProjectError):
    def __init__(self, project_id: str, expected: int, current: int):
        super().__init__(
            f"stale revision for {project_id!r}: expected {expected}, "
            f"store is at {current}"
        )
        self.project_id = project_id
        self.current = current


_PROJECT_ID_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_.-]*$")


class ProjectStore:
    """One canonical JSON file per project, with atomic writes and a
    monotonically increasing revision for optimistic concurrency."""

    def __init__(self, root: Union[str, Path]):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock(self, project_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(project_id, threading.Lock())

    def _path(self, project_id: str) -> Path:
        if not _PROJECT_ID_RE.match(project_id):
            raise ProjectError(f"invalid project id {project_id!r}")
        return self.root / f"{project_id}.json"

    def list(self) -> list[dict]:
        entries = []
        for path in sorted(self.root.glob("*.json")):
            try:
                wrapper = json.loads(path.read_text(encoding="utf-8"))
                name = wrapper["project"]["meta"].get("name", path.stem)
                revision = wrapper["revision"]
            except (json.JSONDecodeError, KeyError, TypeError):
                continue
            entries.append({"id": path.stem, "name": name, "revision": revision})
        return entries

    def get(self, project_id: str) -> tuple[Project, int]:
        path = self._path(project_id)
        if not path.exists():
            raise StoreNotFoundError(project_id)
        wrapper = json.loads(path.read_text(encoding="utf-8"))
        return load_doc(wrapper["project"]), wrapper["revision"]

    def revision(self, project_id: str) -> int:
        path = self._path(project_id)
        if not path.exists():
            raise StoreNotFoundError(project_id)
        return json.loads(path.read_text(encoding="utf-8"))["revision"]

    def put(
        self,
        project_id: str,
        project: Project,
        base_revision: Optional[int] = None,
    ) -> int:
        """Commit a new version; `base_revision` (when given) must match the
        currently committed revision or the put is refused."""
        path = self._path(project_id)
        with self._lock(project_id):
            current = 0
            if path.exists():
                current = json.loads(path.read_text(encoding="utf-8"))["revision"]
            if base_revision is not None and base_revision != current:
                raise StoreConflictError(project_id, base_revision, current)
            new_revision = current + 1
            wrapper = {"revision": new_revision, "project": to_doc(project)}
            payload = json.dumps(wrapper, indent=2, sort_keys=True) + "\n"
            fd, tmp_name = tempfile.mkstemp(
                dir=self.root, prefix=f".{project_id}.", suffix=".tmp"
            )
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as handle:
                    handle.write(payload)
                os.replace(tmp_name, path)
            except BaseException:
                if os.path.exists(tmp_name):
                    os.unlink(tmp_name)
                raise
            return new_revision

    def delete(self, project_id: str) -> None:
        path = self._path(project_id)
        with self._lock(project_id):
            if not path.exists():
                raise StoreNotFoundError(project_id)
            path.unlink()
