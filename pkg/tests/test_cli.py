"""CLI: commands, exit codes, byte-determinism."""

import json

import pytest

from dbases.cli import main
from dbases.fixtures import fixture_path, fixture_text


@pytest.fixture
def case1(tmp_path):
    path = tmp_path / "case1.dbases.json"
    path.write_text(fixture_text("case1"), encoding="utf-8")
    return str(path)


@pytest.fixture
def case2(tmp_path):
    path = tmp_path / "case2.dbases.json"
    path.write_text(fixture_text("case2"), encoding="utf-8")
    return str(path)


@pytest.fixture
def bad_project(tmp_path):
    doc = json.loads(fixture_text("case2"))
    doc["slots"][2]["proficiency"] = 2.5
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


class TestValidate:
    def test_ok(self, case1, capsys):
        assert main(["validate", case1]) == 0
        out = capsys.readouterr().out
        assert "OK" in out and "8 candidates" in out

    def test_invalid_project_exit_1(self, bad_project, capsys):
        assert main(["validate", bad_project]) == 1
        err = capsys.readouterr().err
        assert "/slots/2/proficiency" in err

    def test_missing_file_exit_1(self, capsys):
        assert main(["validate", "/nonexistent.json"]) == 1
        assert "not found" in capsys.readouterr().err


class TestUsage:
    def test_unknown_flag_exits_2(self, case1):
        with pytest.raises(SystemExit) as excinfo:
            main(["score", case1, "--frobnicate"])
        assert excinfo.value.code == 2

    def test_unknown_command_exits_2(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["transmogrify"])
        assert excinfo.value.code == 2


class TestScore:
    def test_case2_counts_and_presentation(self, case2, capsys):
        assert main(["score", case2]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["candidates"]) == 16
        anchor = next(
            c for c in doc["candidates"]
            if [c["assignment"][s]["level"] for s in ("sla_stimulus", "sla_time", "td_time")]
            == ["L1", "L2", "L2"]
        )
        assert abs(anchor["B"] - 11.865) < 5e-13  # JSON carries full precision

    def test_table_shows_two_decimal_presentation(self, case2, capsys):
        assert main(["table", case2, "--format", "csv"]) == 0
        out = capsys.readouterr().out
        assert "11.87" in out  # 2-decimal half-up of 11.865

    def test_out_file(self, case2, tmp_path, capsys):
        out = tmp_path / "analysis.json"
        assert main(["score", case2, "--out", str(out)]) == 0
        assert capsys.readouterr().out == ""
        assert len(json.loads(out.read_text())["candidates"]) == 16

    def test_deterministic_stdout(self, case2, capsys):
        main(["score", case2])
        first = capsys.readouterr().out
        main(["score", case2])
        second = capsys.readouterr().out
        assert first == second


class TestEnumerate:
    def test_counts(self, case1, capsys):
        assert main(["enumerate", case1]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc) == 8
        assert doc[0]["id"] == "C0001"

    def test_invalid_project_reports_pointer(self, bad_project, capsys):
        assert main(["enumerate", bad_project]) == 1
        assert "/slots/2/proficiency" in capsys.readouterr().err


class TestPareto:
    def test_front_lines(self, case1, capsys):
        assert main(["pareto", case1]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert "C0008  B=13.23  D=2.80" in lines


class TestPlotAndDiagram:
    def test_plot_writes_svg(self, case1, tmp_path):
        out = tmp_path / "plot.svg"
        assert main(["plot", case1, "--svg", str(out)]) == 0
        assert out.read_text().startswith("<svg")

    def test_no_front_flag(self, case1, tmp_path):
        out = tmp_path / "plot.svg"
        assert main(["plot", case1, "--svg", str(out), "--no-front"]) == 0
        assert "polyline" not in out.read_text()

    def test_diagram_with_candidate(self, case1, tmp_path):
        out = tmp_path / "pattern.dot"
        assert main(["diagram", case1, "--candidate", "C0008", "--dot", str(out)]) == 0
        assert "L3; general; moderate" in out.read_text()

    def test_diagram_unknown_candidate(self, case1, tmp_path, capsys):
        out = tmp_path / "pattern.dot"
        assert main(["diagram", case1, "--candidate", "C9999", "--dot", str(out)]) == 1
        assert "unknown candidate" in capsys.readouterr().err


class TestCatalogAndClassify:
    def test_catalog_json_exports_all_datasets(self, capsys):
        assert main(["catalog", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["patterns"]) == 8
        assert any(entry["name"] == "petri net" for entry in doc["compatibility"])
        assert len(doc["criteria"]["categories"]["model"]) == 4
        assert len(doc["levels"]["L3"]) == 3

    def test_catalog_human(self, capsys):
        assert main(["catalog"]) == 0
        out = capsys.readouterr().out
        assert "temporal_goal_aware" in out

    def test_classify(self, tmp_path, capsys):
        answers = tmp_path / "answers.json"
        answers.write_text(json.dumps({
            "categories": {"model": [True, True, True, True]},
            "structurability": [True, True, True],
            "tangibility": [True, True],
        }))
        assert main(["classify", "--answers", str(answers)]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["categories"] == ["model"]
        assert doc["traits"] == {
            "structurability": "structural", "tangibility": "tangible",
        }

    def test_classify_malformed_lengths(self, tmp_path, capsys):
        answers = tmp_path / "answers.json"
        answers.write_text(json.dumps({"categories": {"model": [True]}}))
        assert main(["classify", "--answers", str(answers)]) == 1
        assert "model" in capsys.readouterr().err


class TestBundledFixturePaths:
    def test_fixture_files_usable_directly(self, capsys):
        assert main(["validate", str(fixture_path("case3"))]) == 0
        assert "24 candidates" in capsys.readouterr().out
