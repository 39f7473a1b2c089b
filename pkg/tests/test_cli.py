import subprocess
import sys

import pytest

from starwalk.circuit import Circuit, X, export_circuit
from starwalk.cli import main
from starwalk.graph import cycle_graph, export_edge_list


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def report(text):
    return dict(line.split("=", 1) for line in text.strip().splitlines())


@pytest.fixture
def edge_file(tmp_path):
    return write(tmp_path, "edge.txt", "2 1\n0 1\n")


@pytest.fixture
def cycle_file(tmp_path):
    return write(tmp_path, "c8.txt", export_edge_list(cycle_graph(8)))


def test_decompose_triangle(tmp_path, capsys):
    path = write(tmp_path, "tri.txt", "3 3\n0 1\n1 2\n0 2\n")
    assert main(["decompose", path]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[-1] == "d=2 forests=2 star_forests=3 stars=3"
    leaves = sum(len(line.split("leaves=")[1].split(",")) for line in lines[:-1])
    assert leaves == 3


def test_decompose_edgeless(tmp_path, capsys):
    assert main(["decompose", write(tmp_path, "e.txt", "4 0\n")]) == 0
    assert capsys.readouterr().out.strip().endswith("stars=0")


def test_decompose_malformed(tmp_path, capsys):
    assert main(["decompose", write(tmp_path, "bad.txt", "3 2\n0 1\n0 x\n")]) == 2
    assert "line 3" in capsys.readouterr().err


def test_missing_file_is_parse_error(tmp_path):
    assert main(["decompose", str(tmp_path / "nope.txt")]) == 2


def test_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["synthesize"])
    assert info.value.code == 1


def test_synthesize_single_edge(tmp_path, edge_file, capsys):
    out = tmp_path / "edge.circ"
    assert main(["synthesize", edge_file, "--out", str(out), "--verify"]) == 0
    rep = report(capsys.readouterr().out)
    assert rep["r"] == "1" and rep["m"] == "1"
    assert float(rep["distance"]) <= 1e-9
    assert out.read_text().startswith("qubits 2\n")


def test_synthesize_bad_epsilon(edge_file, capsys):
    assert main(["synthesize", edge_file, "--epsilon", "2"]) == 4
    assert "eps" in capsys.readouterr().err


def test_synthesize_bound_precondition_cites_inequality(cycle_file, capsys):
    assert main(["synthesize", cycle_file, "--mode", "bound", "--time", "0.001"]) == 4
    assert "12 d 5^(k-1)" in capsys.readouterr().err


def test_synthesize_gate_cap(tmp_path, cycle_file):
    out = tmp_path / "big.circ"
    assert main(["synthesize", cycle_file, "--out", str(out), "--max-gates", "10"]) == 5
    assert not out.exists()


def test_verify_round_trip(tmp_path, edge_file, capsys):
    circ = tmp_path / "edge.circ"
    main(["synthesize", edge_file, "--out", str(circ)])
    capsys.readouterr()
    assert main(["verify", edge_file, str(circ)]) == 0
    assert float(report(capsys.readouterr().out)["distance"]) <= 1e-9


def test_verify_identity_fails(tmp_path, cycle_file):
    ident = write(tmp_path, "id.circ", "qubits 4\n")
    assert main(["verify", cycle_file, ident]) == 3


def test_verify_width_cap(tmp_path, cycle_file):
    wide = write(tmp_path, "wide.circ", export_circuit(Circuit(14, (X(13),))))
    assert main(["verify", cycle_file, wide]) == 5


def test_verify_width_mismatch(tmp_path, cycle_file):
    assert main(["verify", cycle_file, write(tmp_path, "w.circ", "qubits 7\n")]) == 2


def test_verify_malformed_circuit(tmp_path, cycle_file, capsys):
    assert main(["verify", cycle_file, write(tmp_path, "m.circ", "qubits 4\nH 9\n")]) == 2
    assert "line 2" in capsys.readouterr().err


def test_benchmark_cycles(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["benchmark", "--family", "cycle", "--sizes", "8,16,32,64", "--out", str(out)]) == 0
    rows = out.read_text().strip().splitlines()
    assert rows[0] == "N,d,method,m,r,gate_total,weighted_total,distance,seconds"
    assert len(rows) == 9
    assert [r.split(",")[:3] for r in rows[1:3]] == [["8", "2", "star"], ["8", "2", "pauli"]]


def test_benchmark_deterministic_modulo_seconds(tmp_path):
    args = ["benchmark", "--family", "random-regular", "--sizes", "8,16", "--d", "3", "--seed", "4"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(args + ["--out", str(a)])
    main(args + ["--out", str(b)])
    strip = lambda p: [line.rsplit(",", 1)[0] for line in p.read_text().splitlines()]
    assert strip(a) == strip(b)


def test_benchmark_bad_method():
    assert main(["benchmark", "--family", "cycle", "--sizes", "8", "--methods", "star,qsp"]) == 1


def test_circuit_files_are_byte_identical(tmp_path, cycle_file, capsys):
    a, b = tmp_path / "a.circ", tmp_path / "b.circ"
    main(["synthesize", cycle_file, "--out", str(a)])
    main(["synthesize", cycle_file, "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_pauli_terms(edge_file, capsys):
    assert main(["pauli-terms", edge_file]) == 0
    assert capsys.readouterr().out == "X 1.0\n"


def test_cycle8_star_weighted_total_below_pauli(cycle_file, capsys):
    totals = {}
    for method in ("star", "pauli"):
        assert main(["synthesize", cycle_file, "--method", method]) == 0
        totals[method] = int(report(capsys.readouterr().out)["weighted_total"])
    print(f"cycle N=8 weighted totals: {totals}")
    assert totals["star"] < totals["pauli"]


def test_module_entry_point(edge_file):
    proc = subprocess.run([sys.executable, "-m", "starwalk", "decompose", edge_file], capture_output=True, text=True)
    assert proc.returncode == 0 and "stars=1" in proc.stdout
