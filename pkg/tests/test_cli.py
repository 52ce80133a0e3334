import json
import os

import pytest
from click.testing import CliRunner

from artin import cli

ROOT = os.path.join(os.path.dirname(__file__), "..")
ALG = lambda name: os.path.join(ROOT, "algebras", name)


@pytest.fixture
def run(tmp_path, monkeypatch):
    monkeypatch.setenv("ARTIN_CACHE", str(tmp_path / "cache"))
    runner = CliRunner()

    def go(*args):
        return runner.invoke(cli.main, list(args), catch_exceptions=False)
    return go


def test_indec_lists_truncated_modules(run):
    r = run("indec", ALG("f2_x3.json"))
    assert r.exit_code == 0
    assert r.output.splitlines()[-1] == "3 indecomposables, complete"


def test_indec_zoo_name(run):
    r = run("indec", "field:2")
    assert r.exit_code == 0 and "1 indecomposable, complete" in r.output


def test_indec_bound(run):
    r = run("indec", "trunc:2:3", "--max-vertices", "2")
    assert r.exit_code == 2 and "bound exceeded" in r.output


def test_missing_file_is_input_error(run, tmp_path):
    assert run("indec", str(tmp_path / "nope.json")).exit_code == 1


def test_malformed_spec_is_input_error(run, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": {"p": 4}, "quiver": {"vertices": ["1"], "arrows": []}}')
    assert run("indec", str(bad)).exit_code == 1


def test_infinite_dimensional_is_bound(run):
    assert run("ar", ALG("loop_free.json")).exit_code == 2


def test_ar_json_and_dot(run, tmp_path):
    out = tmp_path / "h.json"
    r = run("ar", ALG("f3_x2.json"), "--category", "H", "--out", str(out))
    assert r.exit_code == 0
    assert len(json.loads(out.read_text())["vertices"]) == 9
    r = run("ar", ALG("f3_x2.json"), "--category", "A")
    assert r.exit_code == 0 and r.output.startswith("digraph")


def test_ar_output_is_byte_identical_across_cache_and_seed(run, tmp_path):
    outs = []
    for extra in ([], [], ["--no-cache"], ["--seed", "7", "--no-cache"]):
        r = run(*extra, "ar", ALG("f2_x3.json"), "--category", "As", "--format", "json")
        assert r.exit_code == 0
        outs.append(r.output)
    assert len(set(outs)) == 1


def test_verify_pass_writes_report(run, tmp_path):
    out = tmp_path / "rep.json"
    r = run("verify", ALG("f3_x2.json"), "--theorem", "7.3", "--theorem", "4.2k", "--out", str(out))
    assert r.exit_code == 0
    assert "PASS" in r.output and "FAIL" not in r.output
    data = json.loads(out.read_text())
    assert [x["theorem"] for x in data["results"]] == ["7.3", "4.2k"]


def test_verify_vacuous(run):
    r = run("verify", ALG("a2_f3.json"), "--theorem", "7.3")
    assert r.exit_code == 3 and "VACUOUS" in r.output


def test_verify_orbit_maps_vacuous_on_field(run):
    assert run("verify", "field:2", "--theorem", "7.9").exit_code == 3


def test_verify_unknown_theorem_rejected(run):
    assert run("verify", "field:2", "--theorem", "9.9").exit_code != 0


def test_verify_parallel_matches_serial(run):
    args = ["verify", ALG("a3_f3.json"), "--theorem", "6.2", "--theorem", "5.11", "--theorem", "6.3"]
    serial = run("--no-cache", *args)
    parallel = run("--no-cache", "--jobs", "2", *args)
    assert serial.exit_code == parallel.exit_code == 0
    assert serial.output == parallel.output


def test_wide_reports(run):
    r = run("wide", ALG("f3_x2.json"), "--gens", "0")
    assert r.exit_code == 0 and json.loads(r.output)["wide"] is False
    r = run("wide", ALG("a2_f3.json"))
    data = json.loads(r.output)
    assert data["wide"] and data["sigma_identity"]
    assert run("wide", ALG("a2_f3.json"), "--gens", "9").exit_code == 1


def test_report_marks_vacuous_items(run):
    r = run("report", ALG("a2_f3.json"))
    assert r.exit_code == 0
    assert "VACUOUS" in r.output and "FAIL" not in r.output


def test_combine_priorities():
    assert cli.combine([0, 3]) == 0
    assert cli.combine([3, 3]) == 3
    assert cli.combine([0, 2, 4]) == 4
    assert cli.combine([4, 1]) == 1
