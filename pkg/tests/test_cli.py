import json

from qftmcx.cli import main
from qftmcx.ir import circuit_from_json
from qftmcx.builder import build_mcx


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_mcx(tmp_path, capsys):
    path = tmp_path / "mcx6.json"
    code, out, _ = run(capsys, "build", "mcx", "6", "--arch", "fc", "--out", str(path))
    assert code == 0
    c = circuit_from_json(path.read_text())
    assert len(c.gates) == 83
    assert "83 gates" in out


def test_build_qft1(tmp_path, capsys):
    path = tmp_path / "q.json"
    code, out, _ = run(capsys, "build", "qft", "1", "--out", str(path))
    assert code == 0
    c = circuit_from_json(path.read_text())
    assert len(c.gates) == 1 and c.gates[0].kind.value == "h"


def test_build_requires_out(capsys):
    code, _, err = run(capsys, "build", "mcx", "4")
    assert code == 2 and "usage error" in err


def test_build_ancilla_plan_echo(tmp_path, capsys):
    path = tmp_path / "anc.json"
    code, out, _ = run(capsys, "build", "mcx-ancilla", "100", "--ancillas", "10",
                       "--objective", "depth", "--out", str(path))
    assert code == 0
    assert "cluster_sizes=[10, 10, 10, 10, 10, 10, 10, 10, 10, 10]" in out


def test_verify_commands(capsys):
    assert run(capsys, "verify", "mcx", "3")[0] == 0
    assert run(capsys, "verify", "mcx", "4", "--arch", "lnn")[0] == 0
    assert run(capsys, "verify", "increment", "4", "--sign", "-1")[0] == 0
    assert run(capsys, "verify", "mcx", "5", "--transpiled")[0] == 0
    assert run(capsys, "verify", "mcx-ancilla", "4", "--ancillas", "2")[0] == 0


def test_verify_cap(capsys):
    code, _, err = run(capsys, "verify", "mcx", "13")
    assert code == 2
    assert "cap" in err


def test_route_exit_codes(tmp_path, capsys):
    path = tmp_path / "mcx5.json"
    run(capsys, "build", "mcx", "5", "--out", str(path))
    assert run(capsys, "route", str(path), "--arch", "fc")[0] == 0
    assert run(capsys, "route", str(path), "--arch", "lnn")[0] == 1
    lnn_path = tmp_path / "mcx5l.json"
    run(capsys, "build", "mcx", "5", "--arch", "lnn", "--out", str(lnn_path))
    assert run(capsys, "route", str(lnn_path), "--arch", "lnn")[0] == 0


def test_route_custom_adjacency(tmp_path, capsys):
    adj = tmp_path / "ring.json"
    adj.write_text(json.dumps({"n": 5, "edges": [[i, (i + 1) % 5] for i in range(5)]}))
    path = tmp_path / "c.json"
    run(capsys, "build", "qft", "3", "--out", str(path))
    code, out, _ = run(capsys, "route", str(path), "--adjacency", str(adj))
    assert code in (0, 1)


def test_transpile_and_schedule(tmp_path, capsys):
    path = tmp_path / "mcx6.json"
    run(capsys, "build", "mcx", "6", "--out", str(path))
    out_path = tmp_path / "mcx6-ngs.json"
    code, out, _ = run(capsys, "transpile", str(path), "--out", str(out_path))
    assert code == 0 and "230 gates" in out
    code, out, _ = run(capsys, "schedule", str(path))
    assert code == 0 and "depth 41" in out
    code, out, _ = run(capsys, "schedule", str(path), "--mode", "ngs", "--slices")
    assert code == 0


def test_export_qasm(tmp_path, capsys):
    path = tmp_path / "c.json"
    run(capsys, "build", "qft", "3", "--out", str(path))
    code, out, _ = run(capsys, "export", str(path), "--format", "qasm")
    assert code == 0
    assert "cp(pi/4) q[0], q[2];" in out
    assert "qreg q[3];" in out


def test_export_json_roundtrip(tmp_path, capsys):
    path = tmp_path / "mcx4.json"
    run(capsys, "build", "mcx", "4", "--out", str(path))
    out_path = tmp_path / "again.json"
    code, _, _ = run(capsys, "export", str(path), "--format", "json", "--out", str(out_path))
    assert code == 0
    c = circuit_from_json(out_path.read_text())
    assert c.gates == build_mcx(4).gates


def test_export_empty_header_only(tmp_path, capsys):
    from qftmcx.ir import Circuit, circuit_to_json
    path = tmp_path / "empty.json"
    path.write_text(circuit_to_json(Circuit(2)))
    code, out, _ = run(capsys, "export", str(path))
    assert code == 0
    body = [ln for ln in out.splitlines() if ln and not ln.startswith("wrote")]
    assert body == ["OPENQASM 2.0;", 'include "qelib1.inc";', "qreg q[2];"]


def test_sweep_cluster_csv(tmp_path, capsys):
    out_path = tmp_path / "cluster.csv"
    code, out, _ = run(capsys, "sweep", "cluster", "--nc", "20", "--r", "3",
                       "--level", "abstract", "--arch", "fc", "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0].startswith("delta_nc,variant,")
    assert len(lines) == 1 + 20 // 3


def test_sweep_determinism(tmp_path, capsys):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    run(capsys, "sweep", "ancilla", "--nc", "20", "--r-range", "2..4",
        "--level", "abstract", "--arch", "fc", "--out", str(a))
    run(capsys, "sweep", "ancilla", "--nc", "20", "--r-range", "2..4",
        "--level", "abstract", "--arch", "fc", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_sweep_plot(tmp_path, capsys):
    out_path = tmp_path / "cluster.csv"
    code, out, _ = run(capsys, "sweep", "cluster", "--nc", "12", "--r", "2",
                       "--level", "abstract", "--arch", "fc",
                       "--out", str(out_path), "--plot")
    assert code == 0
    assert (tmp_path / "cluster.png").exists()


def test_sweep_invalid_range(capsys):
    code, _, err = run(capsys, "sweep", "cluster", "--nc", "5", "--r", "7")
    assert code == 2


def test_usage_error_unknown_file(capsys):
    code, _, err = run(capsys, "schedule", "/nonexistent/file.json")
    assert code == 2


def test_build_aqft_lnn_star_dispatch(tmp_path, capsys):
    path = tmp_path / "star.json"
    code, out, _ = run(capsys, "build", "aqft", "6", "--arch", "lnn", "--out", str(path))
    assert code == 0
    c = circuit_from_json(path.read_text())
    assert c.counts()["swap"] == 8          # 2(n-2) swap/swap-back pairs


def test_verify_dump_unitary(tmp_path, capsys):
    out_path = tmp_path / "u.csv"
    code, _, _ = run(capsys, "verify", "increment", "3", "--dump-unitary", str(out_path))
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "row,col,re,im" and len(lines) == 9
