import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relbgg import homology as hom
from relbgg.cli import COMMANDS, JobSpec, main, run

SAMPLES = {
    "rootsys": "rootsys A3",
    "hasse": "hasse A3 --p 1 --q 1,2",
    "orbit": "orbit A2 --p - --q 1,2 --hw 0,0",
    "homology": "homology A3 --p 1 --q 1,2 --hw 0,0,0",
    "spectrum": "spectrum A2 --p - --q 1,2 --hw 1,1",
    "kostant-check": "kostant-check A3 --p 1 --q 1,2 --hw 1,1,1",
    "kunneth": "kunneth A3 --p 1 --q 1,2 --hw 1,0,0",
    "splitting": "splitting A3 --p 1 --q 1,2 --hw 0,0,0 --degree 0 --seed 7",
    "qop": "qop A2 --p - --q 1 --hw 1,1 --seed 3",
    "compressed": "compressed A2 --p - --q 1,2 --hw 1,1 --model conjugated --seed 2",
    "insertion": "insertion A3 --p - --q 1,2",
    "pathgeom": "pathgeom --w 0 --k 1 --l 2 --validate",
}


def call(text):
    code, out = run(JobSpec.parse(text))
    return code, json.loads(out)


def test_every_command_has_a_sample():
    assert set(SAMPLES) | {"selftest"} == set(COMMANDS)


@pytest.mark.parametrize("name", sorted(SAMPLES))
def test_commands_succeed(name):
    code, body = call(SAMPLES[name])
    assert code == 0, body
    assert body["schema"] == "bgg/1"
    assert body["command"] == name


def test_homology_example():
    code, body = call(SAMPLES["homology"])
    assert [len(d) for d in body["degrees"]] == [1, 1, 1]
    assert body["dims"] == [1, 2, 1]
    assert body["degrees"][1][0]["weight"] == ["1/1", "-2/1", "1/1"]


def test_pathgeom_example():
    code, body = call("pathgeom --w 0 --k 0 --l 0")
    assert body["weights"] == [["0/1"] * 3, ["1/1", "-2/1", "1/1"], ["2/1", "-3/1", "0/1"]]
    assert body["orders"] == [1, 1]
    code, body = call("pathgeom --w -2 --k 0 --l 1")
    assert body["classification"] == "case-B"


def test_splitting_example_passes():
    code, body = call(SAMPLES["splitting"])
    assert body["verdicts"]["ok"]
    assert all(body["verdicts"]["checks"].values())


def test_insertion_is_stable():
    code, body = call(SAMPLES["insertion"])
    assert body["stable"] is True and body["checked"] > 0


@pytest.mark.parametrize("text", [
    "homology A3 --p 1 --q 1,2 --hw 0,0",
    "homology A3 --p 2 --q 1 --hw 0,0,0",
    "homology B3 --p 1 --q 1,2 --hw 0,0,0",
    "homology A3 --p 1 --q 1,2 --hw 0,x,0",
    "frobnicate A3",
    "homology --p 1 --q 1,2 --hw 0,0,0",
    "splitting A3 --p 1 --q 1,2 --hw 0,0,0 --degree 9",
])
def test_usage_errors_exit_2(text, capsys):
    assert main(text.split()) == 2
    body = json.loads(capsys.readouterr().out)
    assert body["error"]["exit"] == 2


def test_non_dominant_exit_3(capsys):
    assert main("homology A3 --p 1 --q 1,2 --hw 0,-1,0".split()) == 3
    assert json.loads(capsys.readouterr().out)["error"]["type"] == "RepresentabilityError"


def test_negative_entries_are_values():
    code, body = call("homology A3 --p 1 --q 1,2 --hw -1,0,0")
    assert code == 0 and body["hw"][0] == "-1/1"


def test_dimension_limit(monkeypatch):
    monkeypatch.setenv("BGG_MAX_DIM", "5")
    hom.clear_cache()
    code, body = call("homology A3 --p 1 --q 1,2 --hw 2,2,2")
    hom.clear_cache()
    assert code == 3 and body["error"]["type"] == "DimensionError"


def test_render_round_trip():
    spec = JobSpec.parse("homology 'A3 p=1 q=1,2' --hw 0,1/2,0")
    assert spec.render() == "homology A3 --p 1 --q 1,2 --hw 0,1/2,0"
    assert JobSpec.parse(spec.render()) == spec


@settings(max_examples=30)
@given(
    st.sampled_from(sorted(SAMPLES)),
    st.booleans(),
)
def test_render_is_a_fixed_point(name, plain):
    text = SAMPLES[name] + (" --plain" if plain else "")
    spec = JobSpec.parse(text)
    again = JobSpec.parse(spec.render())
    assert again == spec
    assert again.render() == spec.render()


@pytest.mark.parametrize("name", ["splitting", "qop", "compressed", "pathgeom"])
def test_deterministic_output(name):
    a = run(JobSpec.parse(SAMPLES[name]))
    hom.clear_cache()
    b = run(JobSpec.parse(SAMPLES[name]))
    assert a == b


def test_plain_mode_uses_dynkin_notation():
    code, out = run(JobSpec.parse(SAMPLES["homology"] + " --plain"))
    assert code == 0
    assert "hw: x[0]-x[0]-o[0]" in out
    assert "x[1]-x[-2]-o[1]" in out
    assert not out.lstrip().startswith("{")


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    assert main(SAMPLES["pathgeom"].split() + ["--output", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["schema"] == "bgg/1"


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "relbgg", "rootsys", "A1"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["algebra"] == "A1"


def test_selftest_with_mutation_fails():
    code, body = call("selftest --mutate no-calibration")
    assert code == 1
    failed = [c["number"] for c in body["criteria"] if not c["passed"]]
    assert failed == [8]
    assert not hom.MUTATIONS
