import json
from pathlib import Path

import pytest
from click.testing import CliRunner

import cqm
from cqm.cli import main

FIX = Path(cqm.__file__).parent / "fixtures"


def run(*args):
    res = CliRunner().invoke(main, [str(a) for a in args])
    out = json.loads(res.stdout) if res.exit_code in (0, 1) and res.stdout else None
    return res.exit_code, out, res


@pytest.mark.parametrize("command, fixture, code", [
    ("complement", "partition_example", 0),
    ("testable-check", "partition_example", 0),
    ("testable-check", "path_cliques", 0),
    ("tensor", "bell", 0),
    ("par", "bell", 0),
    ("vectors", "bell_tensor", 0),
    ("morphism-check", "swap_morphism", 0),
    ("comprehend", "lax_chain_z2", 0),
    ("comprehend", "lax_defect", 1),
    ("roundtrip", "functor", 0),
    ("hilb-testable", "pauli6", 0),
    ("hilb-testable", "mub3", 0),
    ("hilb-morphism", "phase_flip_morphism", 0),
    ("hilb-morphism", "hadamard_morphism", 1),
    ("measure-check", "born_measure", 0),
    ("measure-check", "perturbed_measure", 1),
    ("multi-check", "multi_identity", 0),
    ("axioms", "z2_algebra", 0),
    ("axioms", "z3_algebra", 0),
    ("axioms", "first_projection", 1),
])
def test_fixture_verdicts(command, fixture, code):
    rc, out, res = run(command, "--input", FIX / f"{fixture}.json")
    assert rc == code, res.output
    assert out["schema"] == "cqm/1"
    assert out["pass"] == (code == 0)
    assert out["provenance"]["path"].endswith(f"{fixture}.json")


def test_complement_report_lists_four_transversals():
    _, out, _ = run("complement", "--input", FIX / "partition_example.json")
    assert out["details"]["complement"] == [[0, 2], [0, 3], [1, 2], [1, 3]]


def test_bell_par_vectors():
    _, out, _ = run("vectors", "--input", FIX / "bell.json")
    d = out["details"]
    assert d["count"] == 4 and d["entangled"] == 2
    ent = [v["support"] for v in d["vectors"] if v["kind"] == "entangled"]
    assert ent == [[[0, 0], [1, 1]], [[0, 1], [1, 0]]]


def test_lax_defect_locates_the_cell():
    _, out, _ = run("comprehend", "--input", FIX / "lax_defect.json")
    fails = out["details"]["coherence"]["failures"]
    assert fails and all("cells" in f or "cell" in f for f in fails)


def test_output_file(tmp_path):
    target = tmp_path / "r.json"
    rc, _, _ = run("--output", target, "complement", "--input", FIX / "partition_example.json")
    assert rc == 0
    assert json.loads(target.read_text())["pass"] is True


def test_input_errors_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"universe": [0, 1], "tests": [[0], [0, 1]]}')
    assert run("testable-check", "--input", bad)[0] == 2
    bad.write_text("not json")
    assert run("complement", "--input", bad)[0] == 2
    assert run("complement", "--input", tmp_path / "nope.json")[0] == 2
    assert run("complement")[0] == 2
    assert run("suite", "--only", 99)[0] == 2
    assert run("--tolerance", "-1", "complement")[0] == 2


def test_size_guard_is_an_input_error():
    rc, _, res = run("--max-size", 2, "complement", "--input", FIX / "partition_example.json")
    assert rc == 2 and "refused" in res.stderr


def test_envvar_prefix(monkeypatch):
    monkeypatch.setenv("CQM_SEED", "5")
    _, out, _ = run("complement", "--input", FIX / "partition_example.json")
    assert out["config"]["seed"] == 5


def test_suite_section_is_deterministic():
    a = CliRunner().invoke(main, ["--seed", "7", "suite", "--only", "6"])
    b = CliRunner().invoke(main, ["--seed", "7", "--jobs", "2", "suite", "--only", "6"])
    assert a.exit_code == 0
    assert a.stdout == b.stdout
