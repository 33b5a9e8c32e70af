"""Regenerate the committed golden report outputs for the bundled fixtures.

Run from the repository root after an intentional report-format change:

    python tools/regen_goldens.py

The diagram golden for each fixture uses the last enumerated candidate (the
highest level/form assignment), which exercises non-trivial edge labels.
"""

from pathlib import Path

from dbases.engine import analyze
from dbases.fixtures import FIXTURE_NAMES, load_fixture
from dbases.report import diagram_dot, scatter_svg

GOLDEN_DIR = Path(__file__).resolve().parent.parent / "tests" / "goldens"


def main() -> None:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    for name in FIXTURE_NAMES:
        project = load_fixture(name)
        result = analyze(project)
        svg_path = GOLDEN_DIR / f"{name}.scatter.svg"
        svg_path.write_text(scatter_svg(result), encoding="utf-8")
        dot_path = GOLDEN_DIR / f"{name}.diagram.dot"
        dot_path.write_text(
            diagram_dot(project, result.candidates[-1]), encoding="utf-8"
        )
        print(f"wrote {svg_path.name}, {dot_path.name}")


if __name__ == "__main__":
    main()
