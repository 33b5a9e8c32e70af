"""Deterministic report emitters: benefit/difficulty scatter SVG, candidate
tables (CSV / markdown), and DOT diagrams of (optionally enriched) patterns.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .engine import AnalysisResult, Candidate, SynergyLevel, present
from .model import (
    Capability,
    ConnectorKind,
    MULTIPLICITY_SYMBOLS,
    sorted_capabilities,
)


class ReportError(ValueError):
    """Raised for unusable report inputs."""


# ---------------------------------------------------------------------------
# Scatter plot
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HighlightSpec:
    pareto_front: bool = True
    shortlist: bool = True


@dataclass(frozen=True)
class PlotSpec:
    """Geometry and styling knobs for the scatter plot."""

    width: int = 800
    height: int = 600
    margin: float = 60.0
    x_label: str = "Difficulty (D)"
    y_label: str = "Benefit (B)"
    highlight: HighlightSpec = field(default_factory=HighlightSpec)
    label_mode: str = "ids"  # "ids" | "none"

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ReportError("plot width and height must be positive")
        if self.label_mode not in ("ids", "none"):
            raise ReportError(f"unknown label_mode {self.label_mode!r}")


def _axis_range(values: Sequence[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if hi == lo:
        return lo - 0.5, hi + 0.5
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def _fmt(value: float) -> str:
    return f"{value:.3f}"


_SVG_STYLE = (
    ".axis{stroke:#333;stroke-width:1}"
    ".tick{stroke:#333;stroke-width:1}"
    ".ticklabel{font:11px sans-serif;fill:#333}"
    ".axislabel{font:13px sans-serif;fill:#111}"
    ".pt{fill:#7a8ba6;stroke:#41506b;stroke-width:1}"
    ".pt.pareto{fill:#d4543c;stroke:#8c2f1d}"
    ".ring{fill:none;stroke:#1b7837;stroke-width:2}"
    ".front{fill:none;stroke:#d4543c;stroke-width:1.5;stroke-dasharray:4 3}"
    ".ptlabel{font:10px sans-serif;fill:#333}"
)


def scatter_svg(analysis: AnalysisResult, spec: Optional[PlotSpec] = None) -> str:
    """Self-contained SVG scatter of candidates: D on x, B on y.

    One circle per candidate; Pareto members get a distinct fill class and an
    optional polyline traces the front in ascending difficulty; shortlisted
    candidates are ringed. Output is byte-stable for identical input.
    """
    spec = spec or PlotSpec()
    candidates = analysis.candidates
    if not candidates:
        raise ReportError("nothing to plot")
    for candidate in candidates:
        if candidate.benefit is None or candidate.difficulty is None:
            raise ReportError(f"candidate {candidate.id} is not scored")

    d_lo, d_hi = _axis_range([c.difficulty for c in candidates])
    b_lo, b_hi = _axis_range([c.benefit for c in candidates])
    inner_w = spec.width - 2 * spec.margin
    inner_h = spec.height - 2 * spec.margin

    def x(d: float) -> float:
        return spec.margin + (d - d_lo) / (d_hi - d_lo) * inner_w

    def y(b: float) -> float:
        return spec.height - spec.margin - (b - b_lo) / (b_hi - b_lo) * inner_h

    parts: list[str] = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" '
        f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">'
    )
    parts.append(f"<style>{_SVG_STYLE}</style>")
    parts.append(
        f'<rect x="0" y="0" width="{spec.width}" height="{spec.height}" fill="#ffffff"/>'
    )

    x0, y0 = spec.margin, spec.height - spec.margin
    x1, y1 = spec.width - spec.margin, spec.margin
    parts.append(
        f'<line class="axis" x1="{_fmt(x0)}" y1="{_fmt(y0)}" '
        f'x2="{_fmt(x1)}" y2="{_fmt(y0)}"/>'
    )
    parts.append(
        f'<line class="axis" x1="{_fmt(x0)}" y1="{_fmt(y0)}" '
        f'x2="{_fmt(x0)}" y2="{_fmt(y1)}"/>'
    )
    ticks = 5
    for i in range(ticks):
        frac = i / (ticks - 1)
        dv = d_lo + frac * (d_hi - d_lo)
        bv = b_lo + frac * (b_hi - b_lo)
        tx, ty = x(dv), y(bv)
        parts.append(
            f'<line class="tick" x1="{_fmt(tx)}" y1="{_fmt(y0)}" '
            f'x2="{_fmt(tx)}" y2="{_fmt(y0 + 5)}"/>'
        )
        parts.append(
            f'<text class="ticklabel" x="{_fmt(tx)}" y="{_fmt(y0 + 18)}" '
            f'text-anchor="middle">{present(dv)}</text>'
        )
        parts.append(
            f'<line class="tick" x1="{_fmt(x0 - 5)}" y1="{_fmt(ty)}" '
            f'x2="{_fmt(x0)}" y2="{_fmt(ty)}"/>'
        )
        parts.append(
            f'<text class="ticklabel" x="{_fmt(x0 - 8)}" y="{_fmt(ty + 4)}" '
            f'text-anchor="end">{present(bv)}</text>'
        )
    parts.append(
        f'<text class="axislabel" x="{_fmt((x0 + x1) / 2)}" '
        f'y="{_fmt(spec.height - spec.margin / 3)}" text-anchor="middle">'
        f"{spec.x_label}</text>"
    )
    parts.append(
        f'<text class="axislabel" x="{_fmt(spec.margin / 3)}" '
        f'y="{_fmt((y0 + y1) / 2)}" text-anchor="middle" '
        f'transform="rotate(-90 {_fmt(spec.margin / 3)} {_fmt((y0 + y1) / 2)})">'
        f"{spec.y_label}</text>"
    )

    front = [c for c in candidates if c.pareto]
    if spec.highlight.pareto_front and front:
        front_sorted = sorted(front, key=lambda c: (c.difficulty, c.benefit))
        points = " ".join(
            f"{_fmt(x(c.difficulty))},{_fmt(y(c.benefit))}" for c in front_sorted
        )
        parts.append(f'<polyline class="front" points="{points}"/>')

    for candidate in candidates:
        cx, cy = _fmt(x(candidate.difficulty)), _fmt(y(candidate.benefit))
        cls = "pt pareto" if candidate.pareto else "pt"
        if spec.highlight.shortlist and candidate.shortlisted:
            parts.append(f'<circle class="ring" cx="{cx}" cy="{cy}" r="8"/>')
        parts.append(f'<circle class="{cls}" cx="{cx}" cy="{cy}" r="5"/>')
        if spec.label_mode == "ids":
            parts.append(
                f'<text class="ptlabel" x="{_fmt(x(candidate.difficulty) + 7)}" '
                f'y="{_fmt(y(candidate.benefit) - 7)}">{candidate.id}</text>'
            )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------

def _table_rows(analysis: AnalysisResult) -> tuple[list[str], list[list[str]]]:
    header = ["id", *analysis.slot_ids, "B", "D", "pareto", "shortlisted"]
    rows = []
    for candidate in analysis.candidates:
        if candidate.benefit is None or candidate.difficulty is None:
            raise ReportError(f"candidate {candidate.id} is not scored")
        cells = [candidate.id]
        for slot_id in analysis.slot_ids:
            cells.append(candidate.assignment[slot_id].pretty())
        cells.append(present(candidate.benefit))
        cells.append(present(candidate.difficulty))
        cells.append("true" if candidate.pareto else "false")
        cells.append("true" if candidate.shortlisted else "false")
        rows.append(cells)
    return header, rows


def table(analysis: AnalysisResult, format: str = "markdown") -> str:
    """Candidate table in canonical order; scores at 2-decimal presentation."""
    header, rows = _table_rows(analysis)
    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\r\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buffer.getvalue()
    if format == "markdown":
        def md_cell(cell: str) -> str:
            return cell.replace("|", "\\|")

        lines = ["| " + " | ".join(md_cell(c) for c in header) + " |"]
        lines.append("|" + "|".join(" --- " for _ in header) + "|")
        for row in rows:
            lines.append("| " + " | ".join(md_cell(c) for c in row) + " |")
        return "\n".join(lines) + "\n"
    raise ReportError(f"unknown table format {format!r}")


# ---------------------------------------------------------------------------
# Pattern diagrams
# ---------------------------------------------------------------------------

_ROLE_NODES = {
    "sensor": ("internal sensors", "ellipse"),
    "actuator": ("internal actuators", "ellipse"),
    "external_sensor": ("external sensors", "ellipse"),
    "external_actuator": ("external actuators", "ellipse"),
    "environment": ("environment", "diamond"),
    "external_node": ("external node", "box3d"),
}

_ROLE_ORDER = (
    "environment",
    "sensor",
    "actuator",
    "external_sensor",
    "external_actuator",
    "external_node",
)


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _capability_node_id(capability: Capability) -> str:
    return f"cap_{capability.value}"


def diagram_dot(project, candidate: Optional[Candidate] = None) -> str:
    """DOT graph of the project's pattern, optionally enriched by a candidate.

    Capabilities, sensing/actuating roles and expertise representations are
    nodes with distinct shape classes; pattern connectors carry multiplicity
    labels and their kind as a class (logical ones dashed). With a candidate,
    each synergy above level 0 becomes an edge labeled
    "L<k>; <form>; <difficulty label>"; level-0 synergies are labeled "L0".
    """
    pattern = project.pattern
    if candidate is not None:
        slot_ids = {slot.id for slot in project.slots}
        unknown = sorted(set(candidate.assignment) - slot_ids)
        if unknown:
            raise ReportError(
                f"candidate {candidate.id} references unknown slots: "
                + ", ".join(unknown)
            )
        missing = sorted(slot_ids - set(candidate.assignment))
        if missing:
            raise ReportError(
                f"candidate {candidate.id} lacks assignments for slots: "
                + ", ".join(missing)
            )

    lines: list[str] = []
    lines.append(f"digraph {_dot_quote(pattern.id)} {{")
    lines.append("  graph [rankdir=LR];")
    lines.append('  node [fontname="sans-serif" fontsize=11];')
    lines.append('  edge [fontname="sans-serif" fontsize=10];')

    for capability in sorted_capabilities(pattern.capabilities):
        lines.append(
            f"  {_capability_node_id(capability)} "
            f"[label={_dot_quote(capability.value + '-awareness')} "
            f'shape=box class="capability"];'
        )

    roles_used = []
    for connector in pattern.connectors:
        for endpoint in (connector.endpoint_a, connector.endpoint_b):
            if endpoint in _ROLE_NODES and endpoint not in roles_used:
                roles_used.append(endpoint)
    for role in _ROLE_ORDER:
        if role in roles_used:
            label, shape = _ROLE_NODES[role]
            lines.append(
                f"  {role} [label={_dot_quote(label)} shape={shape} "
                f'class="{role}"];'
            )

    for rep in project.representations:
        lines.append(
            f"  rep_{rep.id} [label={_dot_quote(rep.name)} shape=note "
            f'class="representation"];'
        )

    def node_ref(endpoint: str) -> str:
        if endpoint in _ROLE_NODES:
            return endpoint
        return _capability_node_id(Capability(endpoint))

    for connector in pattern.connectors:
        attrs = [
            f'class="{connector.kind.value}"',
            f"taillabel={_dot_quote(MULTIPLICITY_SYMBOLS[connector.multiplicity_a])}",
            f"headlabel={_dot_quote(MULTIPLICITY_SYMBOLS[connector.multiplicity_b])}",
        ]
        if connector.kind is ConnectorKind.LOGICAL:
            attrs.append("style=dashed")
        lines.append(
            f"  {node_ref(connector.endpoint_a)} -> "
            f"{node_ref(connector.endpoint_b)} [{' '.join(attrs)}];"
        )

    if candidate is not None:
        cfg = project.score_config
        for slot in project.slots:
            choice = candidate.assignment[slot.id]
            if choice.level is SynergyLevel.L0:
                label = "L0"
            else:
                rep = project.representation_by_id(slot.representation)
                rung = cfg.d[choice.level][rep.traits.key()]
                label = (
                    f"{choice.level.label}; {choice.form.value}; "
                    f"{cfg.rung_label(rung)}"
                )
            lines.append(
                f"  rep_{slot.representation} -> "
                f"{_capability_node_id(slot.capability)} "
                f'[label={_dot_quote(label)} class="synergy" style=bold];'
            )

    lines.append("}")
    return "\n".join(lines) + "\n"
