import json
from importlib import resources

import pytest

from handelman_rank import graphs as gr
from handelman_rank.cli import load_graph, main
from handelman_rank.graphs import WeightedGraph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def data_path(name):
    return str(resources.files("handelman_rank") / "data" / name)


def test_stab_on_a_weighted_file(tmp_path, capsys):
    f = tmp_path / "g.graph"
    f.write_text("nodes 3\nnodeweights 1 2 3\n")
    code, out, _ = run(capsys, "stab", str(f))
    assert code == 0 and "alpha = 6" in out


@pytest.mark.parametrize("argv,needle", [
    (["fracstab", "odd_circuit:5"], "alpha_star = 5/2"),
    (["cover", "odd_circuit:5", "--t", "2"], "rho_2 = 5/2"),
    (["handelman", "odd_circuit:5", "--t", "2"], "5/2"),
    (["handelman", "complete:3", "--t", "1"], "INF"),
    (["rank", "odd_circuit:5"], "rank = 3"),
    (["certificate", "odd_circuit:5", "--t", "3"], "lambda = 2"),
    (["bounds", "complete:4"], "upper1 = 4"),
    (["sa", "odd_circuit:5", "--t", "2"], "sa^(2) = 5/2"),
    (["ls1", "complete:4"], "ls^(1) = 4/3"),
    (["zeta", "odd_circuit:5", "--t", "2"], "3"),
    (["maxcut", "odd_circuit:5", "--t", "3"], "mc = 4"),
    (["maxcut-rank", "complete:4"], "maxcut rank = 3"),
    (["handelman", "random:6,0.5", "--t", "2", "--seed", "3", "--approx"], "~"),
])
def test_commands(capsys, argv, needle):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and needle in out


def test_rank_trace_in_json(capsys):
    code, out, _ = run(capsys, "rank", "odd_circuit:5", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["rank"] == 3
    assert list(d["trace"].values()) == ["INF", "5/2", "2"]


def test_tsv_output(capsys):
    code, out, _ = run(capsys, "bounds", "odd_circuit:5", "--format", "tsv")
    header, row = out.strip().split("\n")
    assert header.split("\t") == ["lower", "upper1", "upper2"] and row.split("\t") == ["3", "4", "3"]


def test_certificate_round_trip(tmp_path, capsys):
    code, out, _ = run(capsys, "certificate", "odd_circuit:7", "--t", "3", "--format", "json")
    assert code == 0
    f = tmp_path / "c.json"
    f.write_text(out)
    code, out, _ = run(capsys, "verify-cert", str(f))
    assert code == 0 and "VALID" in out
    d = json.loads(f.read_text())
    d["terms"][0]["c"] = "1/1000"
    f.write_text(json.dumps(d))
    code, out, _ = run(capsys, "verify-cert", str(f))
    assert code == 1 and "INVALID" in out


@pytest.mark.parametrize("name,graph", [("c5", "c5.graph"), ("g2", "g2.graph")])
def test_verify_shipped_certificates(capsys, name, graph):
    code, out, _ = run(capsys, "verify-cert", data_path(f"{name}_certificate.json"), data_path(graph))
    assert code == 0 and "VALID" in out


def test_compare_table(capsys):
    code, out, _ = run(capsys, "compare", "odd_circuit:5", "complete:3", "--tmax", "2")
    lines = out.strip().split("\n")
    assert code == 0 and lines[0].startswith("graph\tt\talpha")
    assert len(lines) == 1 + 2 + 2
    assert lines[2].split("\t")[5] == "5/2"


def test_compare_timeout_marks_cells(capsys):
    code, out, _ = run(capsys, "compare", "complete:3", "--tmax", "1", "--timeout", "60")
    assert code == 0 and "TIMEOUT" not in out


@pytest.mark.parametrize("argv", [
    ["stab", "no_such_family:3"],
    ["stab", "odd_circuit:6"],
    ["stab", "/no/such/file"],
    ["handelman", "odd_circuit:5"],
    ["zeta", "odd_circuit:5", "--t", "-1"],
    ["maxcut", "odd_circuit:5", "--t", "1"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_bad_graph_file(tmp_path, capsys):
    f = tmp_path / "bad.graph"
    f.write_text("nodes 2\nedge 1 3\n")
    code, _, err = run(capsys, "stab", str(f))
    assert code == 2 and "bad.graph" in err


def test_computational_failure_exit_code(capsys):
    code, _, err = run(capsys, "handelman", "complete:20", "--t", "10")
    assert code == 1 and "limit" in err


def test_argparse_rejects_unknown_command(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_load_graph_modes():
    g = load_graph("path:3", mode="MIN")
    assert isinstance(g, WeightedGraph) and g.weight_mode is gr.WeightMode.MIN
    assert load_graph("random:6,0.5", seed=4) == load_graph("random:6,0.5,4")


def test_reproduce_subset(capsys):
    code, out, _ = run(capsys, "reproduce-paper", "--only", "1", "7")
    lines = [ln for ln in out.splitlines() if ln.startswith("[")]
    assert code == 0 and len(lines) == 2 and all("PASS" in ln for ln in lines)
