import json
import subprocess
import sys

import pytest

from gslab.cli import main
from gslab.decomposition import certificate_from_json, verify_certificate
from gslab.graphs import load_graph


def run_cli(*argv):
    return main(list(argv))


def test_generate_census_roundtrip(tmp_path):
    gpath = tmp_path / "g.json"
    out = tmp_path / "census.csv"
    assert run_cli("generate", "--family", "path", "--n", "10", "--out", str(gpath)) == 0
    g = load_graph(str(gpath))
    assert g.n == 10
    assert run_cli("census", "--input", str(gpath), "--radius", "1",
                   "--out", str(out)) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "radius,code_hex,count,frequency"
    counts = sorted(int(line.split(",")[2]) for line in lines[1:])
    assert counts == [2, 8]


def test_generate_all_families(tmp_path):
    for family, flags in [("cycle", ["--n", "7"]), ("grid2d", ["--n", "4"]),
                          ("grid3d", ["--n", "3"]),
                          ("selfsimilar", ["--levels", "3"]),
                          ("glued-box", ["--n", "4", "--side", "3d"])]:
        out = tmp_path / f"{family}.json"
        assert run_cli("generate", "--family", family, *flags, "--out", str(out)) == 0
        assert load_graph(str(out)).n > 0


def test_metric_modes(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    run_cli("generate", "--family", "path", "--n", "6", "--out", str(a))
    run_cli("generate", "--family", "cycle", "--n", "6", "--out", str(b))
    for mode in ("exact", "heuristic", "rho-upper", "rho-lower"):
        out = tmp_path / f"{mode}.json"
        assert run_cli("metric", "--a", str(a), "--b", str(b), "--mode", mode,
                       "--out", str(out)) == 0
        res = json.loads(out.read_text())
        assert 0.0 <= res["value"] <= 1.0


def test_decompose_writes_verifiable_certificate(tmp_path):
    g = tmp_path / "g.json"
    cert_path = tmp_path / "cert.json"
    run_cli("generate", "--family", "path", "--n", "200", "--out", str(g))
    assert run_cli("decompose", "--input", str(g), "--epsilon", "0.1",
                   "--out", str(cert_path)) == 0
    cert = certificate_from_json(json.loads(cert_path.read_text()))
    assert verify_certificate(load_graph(str(g)), cert, 0.1, cert.k)


def test_decompose_flags_violation(tmp_path):
    g = tmp_path / "g.json"
    run_cli("generate", "--family", "path", "--n", "200", "--out", str(g))
    rc = run_cli("decompose", "--input", str(g), "--epsilon", "0.1",
                 "--out", str(tmp_path / "c.json"), "--k-max", "2")
    assert rc == 1


def test_missing_input_is_input_error(tmp_path):
    rc = run_cli("census", "--input", str(tmp_path / "nope.json"), "--radius", "1")
    assert rc == 2


def test_invalid_rule_file_is_input_error(tmp_path):
    g = tmp_path / "g.json"
    rule = tmp_path / "rule.json"
    run_cli("generate", "--family", "path", "--n", "30", "--out", str(g))
    rule.write_text(json.dumps({"radius": 1, "table": {}}))
    rc = run_cli("ids", "--family", "path", "--sizes", "10,20",
                 "--rule", str(rule), "--out-dir", str(tmp_path / "out"))
    assert rc == 2


def test_ids_outputs_and_determinism(tmp_path):
    out1 = tmp_path / "run1"
    out2 = tmp_path / "run2"
    for out in (out1, out2):
        assert run_cli("ids", "--family", "path", "--sizes", "40,80,160",
                       "--out-dir", str(out)) == 0
    for name in ("ids.csv", "distribution.csv", "summary.json"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
    summary = json.loads((out1 / "summary.json").read_text())
    assert summary["cauchy"] is True


def test_folner_csv(tmp_path):
    out = tmp_path / "profile.csv"
    assert run_cli("folner", "--generator", "glued-2d", "--sizes", "5,10,20",
                   "--out", str(out)) == 0
    rows = out.read_text().strip().splitlines()
    assert rows[0] == "size,boundary,ratio"
    ratios = [float(r.split(",")[2]) for r in rows[1:]]
    assert ratios == sorted(ratios, reverse=True)


def test_selfsimilar_profile(tmp_path):
    out = tmp_path / "ss.csv"
    assert run_cli("selfsimilar", "--levels", "6", "--out", str(out)) == 0
    rows = out.read_text().strip().splitlines()[1:]
    assert len(rows) == 6
    assert all(row.split(",")[4] == "1" for row in rows)


def test_rankcheck_summary(tmp_path):
    out = tmp_path / "rank.json"
    assert run_cli("rankcheck", "--trials", "25", "--n", "30", "--max-rank", "4",
                   "--seed", "3", "--out", str(out)) == 0
    res = json.loads(out.read_text())
    assert res["violations"] == 0 and res["bound_ok"] is True


def test_conjecture_probe(tmp_path):
    out = tmp_path / "probe.csv"
    assert run_cli("conjecture-probe", "--family", "grid2d", "--sizes", "4,6,8",
                   "--radius", "1", "--max-scale", "1", "--out", str(out)) == 0
    rows = out.read_text().strip().splitlines()
    assert rows[0] == "n_prev,n_next,rho_upper,rho_lower"
    for row in rows[1:]:
        _, _, up, low = row.split(",")
        assert float(low) <= float(up) + 1e-12


def test_run_config(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "experiment": "rankcheck", "trials": 10, "n": 25, "max_rank": 3,
        "seed": 11, "out": str(tmp_path / "out.json")}))
    assert run_cli("run", "--config", str(cfg)) == 0
    assert json.loads((tmp_path / "out.json").read_text())["bound_ok"] is True


def test_run_config_missing_keys(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"experiment": "rankcheck", "trials": 5}))
    assert run_cli("run", "--config", str(cfg)) == 2


def test_console_entrypoint(tmp_path):
    g = tmp_path / "g.json"
    proc = subprocess.run(
        [sys.executable, "-m", "gslab.cli", "generate", "--family", "cycle",
         "--n", "9", "--out", str(g)], capture_output=True)
    assert proc.returncode == 0
    assert load_graph(str(g)).n == 9


def test_bad_threads_env(tmp_path, monkeypatch):
    monkeypatch.setenv("GSLAB_THREADS", "zero")
    with pytest.raises(SystemExit):
        run_cli("selfsimilar", "--levels", "2", "--out", str(tmp_path / "x.csv"))
