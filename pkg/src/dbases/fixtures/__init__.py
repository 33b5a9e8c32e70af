"""Bundled example projects, one per tutorial case study."""

from importlib import resources
from pathlib import Path

FIXTURE_NAMES = ("case1", "case2", "case3")


def fixture_text(name: str) -> str:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; have {FIXTURE_NAMES}")
    return (
        resources.files(__package__)
        .joinpath(f"{name}.dbases.json")
        .read_text(encoding="utf-8")
    )


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled fixture (fixtures ship as real files)."""
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; have {FIXTURE_NAMES}")
    return Path(str(resources.files(__package__).joinpath(f"{name}.dbases.json")))


def load_fixture(name: str):
    from .. import project_io

    return project_io.loads(fixture_text(name))
