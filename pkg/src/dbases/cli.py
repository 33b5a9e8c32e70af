"""Command-line front door for the analysis pipeline.

Exit codes: 0 success, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import engine, model, project_io, report
from .engine import OptionSpaceError, present
from .model import CriteriaAnswers, SynergyLevel
from .project_io import ProjectError, ProjectParseError, ProjectValidationError

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2


def _write_output(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _load_project(path: str) -> project_io.Project:
    return project_io.load(path)


def _print_project_errors(exc: Exception) -> None:
    if isinstance(exc, ProjectValidationError):
        for issue in exc.issues:
            print(str(issue), file=sys.stderr)
    else:
        print(str(exc), file=sys.stderr)


def _json_dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_validate(args) -> int:
    project = _load_project(args.project)
    count = engine.count_candidates(project)
    print(
        f"OK: {project.meta_name} "
        f"({len(project.slots)} slots, {count} candidates)"
    )
    return EXIT_OK


def _cmd_classify(args) -> int:
    raw = json.loads(Path(args.answers).read_text(encoding="utf-8"))
    answers = CriteriaAnswers(
        categories=raw.get("categories", {}),
        structurability=raw.get("structurability", ()),
        tangibility=raw.get("tangibility", ()),
    )
    categories = model.classify(answers)
    traits = model.classify_traits(answers)
    doc = {
        "categories": sorted(c.name for c in categories),
        "traits": {
            "structurability": traits.structurability.value
            if traits.structurability
            else None,
            "tangibility": traits.tangibility.value if traits.tangibility else None,
        },
    }
    sys.stdout.write(_json_dumps(doc))
    return EXIT_OK


def _catalog_doc() -> dict:
    return {
        "patterns": [
            {
                "id": p.id,
                "name": p.name,
                "capabilities": [
                    c.value for c in model.sorted_capabilities(p.capabilities)
                ],
                "meta_self_optional": p.meta_self_optional,
                "external_decision_links": p.external_decision_links,
                "characteristics": p.characteristics,
                "connectors": [
                    {
                        "endpoint_a": c.endpoint_a,
                        "endpoint_b": c.endpoint_b,
                        "kind": c.kind.value,
                        "multiplicity_a": c.multiplicity_a.value,
                        "multiplicity_b": c.multiplicity_b.value,
                    }
                    for c in p.connectors
                ],
            }
            for p in model.pattern_catalog()
        ],
        "compatibility": [
            {
                "name": name,
                "category": category,
                "capabilities": [
                    c.value for c in model.sorted_capabilities(caps)
                ],
            }
            for name, (category, caps) in sorted(model.COMPAT_REGISTRY.items())
        ],
        "criteria": {
            "categories": {
                name: list(items) for name, items in model.CATEGORY_CRITERIA.items()
            },
            "structurability": list(model.STRUCTURABILITY_CRITERIA),
            "tangibility": list(model.TANGIBILITY_CRITERIA),
        },
        "levels": {
            level.label: list(model.LEVEL_CRITERIA[level]) for level in SynergyLevel
        },
    }


def _cmd_catalog(args) -> int:
    if args.json:
        sys.stdout.write(_json_dumps(_catalog_doc()))
        return EXIT_OK
    for pattern in model.pattern_catalog():
        caps = ", ".join(
            c.value for c in model.sorted_capabilities(pattern.capabilities)
        )
        print(f"{pattern.id}: {pattern.name}")
        print(f"  capabilities: {caps}")
        print(f"  {pattern.characteristics}")
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    project = _load_project(args.project)
    candidates = engine.enumerate_candidates(project)
    doc = [
        {
            "id": c.id,
            "assignment": {
                slot_id: {
                    "level": choice.level.label,
                    "form": choice.form.value if choice.form else None,
                }
                for slot_id, choice in c.assignment.items()
            },
        }
        for c in candidates
    ]
    _write_output(_json_dumps(doc), args.out)
    return EXIT_OK


def _cmd_score(args) -> int:
    project = _load_project(args.project)
    result = engine.analyze(project)
    _write_output(_json_dumps(result.to_doc()), args.out)
    return EXIT_OK


def _cmd_pareto(args) -> int:
    project = _load_project(args.project)
    result = engine.analyze(project)
    for candidate in result.pareto_front:
        print(
            f"{candidate.id}  B={present(candidate.benefit)}  "
            f"D={present(candidate.difficulty)}"
        )
    return EXIT_OK


def _cmd_plot(args) -> int:
    project = _load_project(args.project)
    result = engine.analyze(project)
    spec = report.PlotSpec(
        highlight=report.HighlightSpec(pareto_front=not args.no_front)
    )
    svg = report.scatter_svg(result, spec)
    Path(args.svg).write_text(svg, encoding="utf-8")
    return EXIT_OK


def _cmd_diagram(args) -> int:
    project = _load_project(args.project)
    candidate = None
    if args.candidate is not None:
        result = engine.analyze(project)
        candidate = result.candidate_by_id(args.candidate)
    dot = report.diagram_dot(project, candidate)
    Path(args.dot).write_text(dot, encoding="utf-8")
    return EXIT_OK


def _cmd_table(args) -> int:
    project = _load_project(args.project)
    result = engine.analyze(project)
    sys.stdout.write(report.table(result, format=args.format))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    data_dir = args.data_dir or os.environ.get("DBASES_DATA_DIR") or "./dbases-data"
    app = create_app(data_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dbases",
        description=(
            "Difficulty/benefit analysis of domain-expertise synergies with "
            "self-awareness capabilities."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a project file")
    p.add_argument("project")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("classify", help="classify questionnaire answers")
    p.add_argument("--answers", required=True, help="JSON answers file")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("catalog", help="show shipped patterns, registry and criteria")
    p.add_argument("--json", action="store_true", help="emit structured JSON")
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("enumerate", help="enumerate valid candidates")
    p.add_argument("project")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("score", help="enumerate, score and Pareto-flag candidates")
    p.add_argument("project")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("pareto", help="print the Pareto front")
    p.add_argument("project")
    p.set_defaults(func=_cmd_pareto)

    p = sub.add_parser("plot", help="write the benefit/difficulty scatter SVG")
    p.add_argument("project")
    p.add_argument("--svg", required=True, help="output SVG path")
    p.add_argument("--no-front", action="store_true", help="omit the Pareto polyline")
    p.set_defaults(func=_cmd_plot)

    p = sub.add_parser("diagram", help="write the pattern diagram as DOT")
    p.add_argument("project")
    p.add_argument("--candidate", help="candidate id to enrich the diagram with")
    p.add_argument("--dot", required=True, help="output DOT path")
    p.set_defaults(func=_cmd_diagram)

    p = sub.add_parser("table", help="print the candidate table")
    p.add_argument("project")
    p.add_argument("--format", choices=("csv", "markdown"), default="markdown")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=7343)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data-dir", help="project store directory "
                   "(default: $DBASES_DATA_DIR or ./dbases-data)")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ProjectParseError, ProjectValidationError, ProjectError) as exc:
        _print_project_errors(exc)
        return EXIT_INVALID
    except OptionSpaceError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID
    except (model.ModelError, engine.EngineError, report.ReportError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID
    except FileNotFoundError as exc:
        print(f"file not found: {exc.filename}", file=sys.stderr)
        return EXIT_INVALID
    except json.JSONDecodeError as exc:
        print(
            f"parse error at line {exc.lineno} column {exc.colno}: {exc.msg}",
            file=sys.stderr,
        )
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
