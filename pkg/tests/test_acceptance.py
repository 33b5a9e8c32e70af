"""Acceptance gate: every shipped criterion at its stated tolerance.

Each test carries a `criterion` marker; the terminal summary prints one
PASS/FAIL line per criterion (see conftest.py).
"""

import json
import math
import random
import time
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from dbases.engine import (
    SynergyLevel,
    WhatIfOverrides,
    analyze,
    count_candidates,
    enumerate_candidates,
    pareto,
    present,
    score_candidates,
    slot_options,
    whatif,
)
from dbases.fixtures import FIXTURE_NAMES, fixture_text, load_fixture
from dbases.model import (
    default_score_config,
    pattern_catalog,
    validate_pattern,
    validate_score_config,
)
from dbases.project_io import dumps, loads
from dbases.report import diagram_dot, scatter_svg
from dbases.service import REVISION_HEADER, create_app

from dot_checker import check_dot
from project_gen import brute_force_front, random_project, random_scored_points
from test_properties import untied_candidate_ids, upgrade_pairs

GOLDEN_DIR = Path(__file__).parent / "goldens"

L1, L2, L3 = SynergyLevel.L1, SynergyLevel.L2, SynergyLevel.L3


def timed_analysis(name):
    start = time.perf_counter()
    result = analyze(load_fixture(name))
    elapsed = time.perf_counter() - start
    return result, elapsed


def candidate_at(result, slot_levels):
    for candidate in result.candidates:
        levels = {s: c.level for s, c in candidate.assignment.items()}
        forms = {
            s: c.form.value if c.form else None
            for s, c in candidate.assignment.items()
        }
        if levels == dict(slot_levels) and all(
            f in (None, "general") for f in forms.values()
        ):
            return candidate
    raise AssertionError(f"no general-form candidate at {slot_levels}")


@pytest.mark.criterion(
    "case-1 anchor: (L1,L2,L3) B=13.23 D=2.80 and (L1,L2,L2) B=12.60 D=2.64, "
    "exact at 2 decimals, < 1 s"
)
def test_case1_anchor():
    result, elapsed = timed_analysis("case1")
    c_123 = candidate_at(
        result, {"fm_stimulus": L1, "fm_time": L2, "fm_goal": L3}
    )
    assert present(c_123.benefit) == "13.23"
    assert present(c_123.difficulty) == "2.80"
    c_122 = candidate_at(
        result, {"fm_stimulus": L1, "fm_time": L2, "fm_goal": L2}
    )
    assert present(c_122.benefit) == "12.60"
    assert present(c_122.difficulty) == "2.64"
    assert elapsed < 1.0


@pytest.mark.criterion(
    "case-2 anchor: exactly 16 candidates; (L1,L2,L2) B=11.865 exact at 3 "
    "decimals, D within +/-0.02 of 3.01, < 1 s"
)
def test_case2_anchor():
    result, elapsed = timed_analysis("case2")
    assert len(result.candidates) == 16
    candidate = candidate_at(
        result, {"sla_stimulus": L1, "sla_time": L2, "td_time": L2}
    )
    assert present(candidate.benefit, places=3) == "11.865"
    assert abs(candidate.difficulty - 3.01) <= 0.02
    assert elapsed < 1.0


@pytest.mark.criterion("case-3 anchor: exactly 24 candidates, < 1 s")
def test_case3_anchor():
    result, elapsed = timed_analysis("case3")
    assert len(result.candidates) == 24
    assert elapsed < 1.0


@pytest.mark.criterion(
    "property (a): Pareto flags equal the O(n^2) oracle on 100 random "
    "instances, n <= 200"
)
def test_pareto_oracle_100_instances():
    rng = random.Random(20260809)
    for _ in range(100):
        points = random_scored_points(rng, rng.randint(1, 200))
        expected = brute_force_front(points)
        pareto(points)
        assert [c.pareto for c in points] == expected


@pytest.mark.criterion(
    "property (b): unconstrained count equals the closed-form product on "
    "100 random projects"
)
def test_count_law_100_projects():
    rng = random.Random(775201)
    for _ in range(100):
        project = random_project(rng)
        product = math.prod(len(slot_options(s)) for s in project.slots)
        assert count_candidates(project) == product
        assert len(enumerate_candidates(project)) == product


@pytest.mark.criterion(
    "property (c): level/proficiency monotonicity and uniform-p "
    "Pareto-invariance on 1,000 randomized candidates"
)
def test_monotonicity_and_invariance_1000_candidates():
    rng = random.Random(424242)
    seen_candidates = 0
    seen_upgrades = 0
    while seen_candidates < 1000:
        project = random_project(rng, max_slots=3, max_options=500)
        candidates = score_candidates(enumerate_candidates(project), project)
        seen_candidates += len(candidates)

        for base, upgraded in upgrade_pairs(project, candidates):
            seen_upgrades += 1
            assert upgraded.benefit > base.benefit
            assert upgraded.difficulty >= base.difficulty

        slot = rng.choice(project.slots)
        if slot.proficiency < 1.95:
            bumped = min(2.0, slot.proficiency + 0.05)
            base_run = analyze(project)
            raised = whatif(project, WhatIfOverrides(p={slot.id: bumped}))
            for before, after in zip(base_run.candidates, raised.candidates):
                assert after.benefit > before.benefit
                assert after.difficulty < before.difficulty

        top = max(s.proficiency for s in project.slots)
        kappa = rng.uniform(1.0, 2.0 / top)
        base_run = analyze(project)
        scaled = whatif(
            project,
            WhatIfOverrides(p={s.id: s.proficiency * kappa for s in project.slots}),
        )
        decisive = untied_candidate_ids(base_run.candidates)
        assert (
            {c.id for c in base_run.candidates if c.pareto} & decisive
            == {c.id for c in scaled.candidates if c.pareto} & decisive
        )
    assert seen_upgrades > 0


@pytest.mark.criterion(
    "property (d): every shipped pattern and the default score config pass "
    "their validators"
)
def test_shipped_data_validates():
    patterns = pattern_catalog()
    assert len(patterns) == 8
    for pattern in patterns:
        report = validate_pattern(pattern)
        assert report.ok, f"{pattern.id}: {report.findings}"
    assert validate_score_config(default_score_config()).ok


@pytest.mark.criterion("property (e): load/save identity on all fixtures")
def test_load_save_identity_all_fixtures():
    for name in FIXTURE_NAMES:
        project = loads(fixture_text(name))
        assert loads(dumps(project)) == project
        assert dumps(loads(dumps(project))) == dumps(project)


@pytest.mark.criterion(
    "golden files: scatter SVG and diagram DOT byte-match committed goldens "
    "and parse cleanly, all fixtures"
)
def test_golden_files():
    for name in FIXTURE_NAMES:
        project = load_fixture(name)
        result = analyze(project)
        svg = scatter_svg(result)
        dot = diagram_dot(project, result.candidates[-1])
        assert svg == (GOLDEN_DIR / f"{name}.scatter.svg").read_text(encoding="utf-8")
        assert dot == (GOLDEN_DIR / f"{name}.diagram.dot").read_text(encoding="utf-8")
        ET.fromstring(svg)
        check_dot(dot)


@pytest.mark.criterion(
    "service contract: analysis idempotent per revision; whatif leaves the "
    "stored revision untouched; stale-revision put returns 409"
)
def test_service_contract(tmp_path):
    app = create_app(tmp_path / "data")
    with TestClient(app) as client:
        created = client.put("/api/projects/case2", content=fixture_text("case2"))
        assert created.status_code == 200

        first = client.post("/api/projects/case2/analysis")
        second = client.post("/api/projects/case2/analysis")
        assert first.content == second.content
        assert len(first.json()["candidates"]) == 16

        before = client.get("/api/projects/case2")
        wf = client.post(
            "/api/projects/case2/whatif", json={"p": {"sla_time": 2.0}}
        )
        assert wf.status_code == 200
        after = client.get("/api/projects/case2")
        assert before.headers[REVISION_HEADER] == after.headers[REVISION_HEADER]
        assert before.json() == after.json()

        doc = json.loads(fixture_text("case2"))
        ok = client.put(
            "/api/projects/case2", json=doc, headers={REVISION_HEADER: "1"}
        )
        assert ok.status_code == 200
        stale = client.put(
            "/api/projects/case2", json=doc, headers={REVISION_HEADER: "1"}
        )
        assert stale.status_code == 409
