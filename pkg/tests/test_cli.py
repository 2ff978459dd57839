import json
import os
import subprocess
import sys

import pytest

from aalpha.cli import EXIT_FAIL, EXIT_IO, EXIT_OK, EXIT_USAGE, UsageError, main, parse_invocation
from aalpha.graph import SequenceClass, cycle_graph, format_edge_list, read_edge_list


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def c5(tmp_path):
    path = tmp_path / "c5.edges"
    path.write_text(format_edge_list(cycle_graph(5)))
    return str(path)


def test_parse_build():
    inv = parse_invocation(["build", "--class", "tree", "--pi", "3,2,2,1,1,1"])
    assert inv.command == "build" and inv.kind is SequenceClass.TREE
    assert inv.sequence.degrees == (3, 2, 2, 1, 1, 1)


def test_parse_rho():
    inv = parse_invocation(["rho", "--alpha", "0.5", "--graph", "g.edges"])
    assert inv.alpha == [0.5] and inv.graph == "g.edges"


@pytest.mark.parametrize("argv, needle", [
    (["rho", "--alpha", "1.0", "--graph", "g"], "alpha must be in [0,1)"),
    (["frobnicate"], "unknown command"),
    (["verify", "--pi", "2,2,1,1", "--n", "4"], "exactly one"),
    (["fuzz", "--lemma", "9.9"], "unknown lemma"),
    (["fuzz", "--lemma", "2.1", "--cases", "0"], "positive"),
    (["validate", "--pi", "3,x"], "bad token"),
])
def test_usage_errors(argv, needle):
    with pytest.raises(UsageError, match=needle.replace("[", r"\[").replace(")", r"\)")):
        parse_invocation(argv)


def test_usage_exit_code(capsys):
    code, _, err = run(capsys, "rho", "--alpha", "1.0", "--graph", "g")
    assert code == EXIT_USAGE and "alpha must be in [0,1)" in err


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "--class", "unicyclic", "--pi", "3,3,2,2,1,1")
    assert code == EXIT_OK and "valid" in out
    code, out, _ = run(capsys, "validate", "--class", "unicyclic", "--pi", "4,1,1")
    assert code == EXIT_FAIL and "invalid" in out and "note:" in out


def test_build_writes_edges_and_layers(tmp_path, capsys):
    out = tmp_path / "t.edges"
    code, _, _ = run(capsys, "build", "--class", "tree", "--pi", "3,2,2,1,1,1", "--out", str(out))
    assert code == EXIT_OK
    g = read_edge_list(str(out))
    assert g.degrees == (3, 2, 2, 1, 1, 1)
    layers = json.loads((tmp_path / "t.edges.layers.json").read_text())
    assert {"vertex", "height", "assigned_degree"} == set(layers[0])
    assert not [p for p in os.listdir(tmp_path) if p.startswith(".aalpha-")]


def test_build_to_stdout(capsys):
    code, out, _ = run(capsys, "build", "--class", "unicyclic", "--pi", "3,2,2,1")
    assert code == EXIT_OK and out.splitlines()[0] == "4 4"


def test_rho_json(c5, capsys):
    code, out, _ = run(capsys, "rho", "--alpha", "0.5", "--graph", c5)
    rec = json.loads(out)
    assert code == EXIT_OK and rec["rho"] == 2.0 and rec["n"] == 5 and rec["method"] == "power"
    _, out, _ = run(capsys, "rho", "--alpha", "0,0.5", "--graph", c5)
    assert len(json.loads(out)) == 2


def test_sweep_csv_on_c5(c5, capsys):
    code, out, _ = run(capsys, "sweep", "--alpha", "0,0.25,0.5,0.75", "--graph", c5)
    lines = out.splitlines()
    assert code == EXIT_OK and lines[0] == "alpha,rho"
    assert [line.split(",")[1] for line in lines[1:]] == ["2.0"] * 4


def test_io_error(tmp_path, capsys):
    code, _, err = run(capsys, "rho", "--alpha", "0.5", "--graph", str(tmp_path / "missing.edges"))
    assert code == EXIT_IO and "I/O error" in err


def test_malformed_graph_file(tmp_path, capsys):
    bad = tmp_path / "bad.edges"
    bad.write_text("3 1\n0 0\n")
    code, _, err = run(capsys, "rho", "--alpha", "0.5", "--graph", str(bad))
    assert code == EXIT_USAGE and "self-loop" in err


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--class", "tree", "--pi", "3,2,2,1,1,1", "--alpha", "0.5")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["verdict"] == "Pass" and rep["claim"] == "tree-maximizer"


def test_verify_batch_csv(capsys):
    code, out, _ = run(capsys, "verify", "--class", "unicyclic", "--n", "5", "--alpha", "0.2")
    lines = out.splitlines()
    assert code == EXIT_OK
    assert lines[0] == "n,pi,alpha,class_size,max_rho,builder_rho,verdict,gap"
    assert len(lines) == 1 + 4  # 4,2,2,1,1  3,3,2,1,1  3,2,2,2,1  2,2,2,2,2


def test_verify_is_deterministic(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        assert main(["verify", "--class", "tree", "--n", "7", "--format", "json", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_fuzz_subdivision_seed_42(capsys, tmp_path):
    report = tmp_path / "fuzz.json"
    code, out, _ = run(capsys, "fuzz", "--lemma", "2.10", "--seed", "42", "--cases", "500", "--out", str(report))
    assert code == EXIT_OK and "0 counterexamples" in out
    data = json.loads(report.read_text())
    assert data["cases"] == 500 and data["counterexamples"] == 0


@pytest.mark.parametrize("lemma", ["neighbor-shift", "2.3"])
def test_fuzz_small(capsys, lemma):
    code, out, _ = run(capsys, "fuzz", "--lemma", lemma, "--seed", "1", "--cases", "30")
    assert code == EXIT_OK and "30 cases, 0 counterexamples" in out


def test_fuzz_path_balance(capsys):
    code, out, _ = run(capsys, "fuzz", "--lemma", "4.3", "--alpha", "0.5")
    assert code == EXIT_OK and "0 counterexamples" in out


def test_console_script_module_entry():
    out = subprocess.run([sys.executable, "-m", "aalpha.cli", "validate", "--pi", "2,2,1,1"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "valid" in out.stdout
