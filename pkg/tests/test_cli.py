import json
import subprocess
import sys

from orbitquant.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog_list_and_show(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and "heis1" in json.loads(out)["groups"]
    path = tmp_path / "n51.json"
    code, out, _ = run(capsys, "catalog", "show", "n5_1", "--export", str(path))
    assert code == 0 and json.loads(out)["entry"]["dim"] == 5
    code, out, _ = run(capsys, "orbits", str(path), "--point", "0,1,0,0,0")
    assert code == 0 and json.loads(out)["orbit_dim"] == 2


def test_orbits_delta(capsys):
    code, out, _ = run(capsys, "orbits", "g4delta:δ=1", "--point", "0,0,1,1", "--pfaffian")
    rep = json.loads(out)
    assert code == 0 and rep["is_flat"] and rep["pfaffian"] == "2"
    assert rep["pfaffian_polynomial"] == "z0 + z1" and rep["schema"] == 1


def test_usage_errors(capsys):
    assert run(capsys, "orbits", "nope")[0] == 2
    assert run(capsys, "orbits", "heis1", "--point", "1,2")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "rep", "n5_1", "--Z", "1")[0] == 2
    assert run(capsys, "verify", "--group", "heis1", "--suite", "bogus")[0] == 2
    assert run(capsys, "quantize", "--group", "heis1", "--scheme", "kn", "--symbol", "x")[0] == 2


def test_rep(capsys):
    code, out, _ = run(capsys, "rep", "heis1", "--Z", "1", "--M", "256", "--ladder", "5",
                       "--intertwiner", "2")
    rep = json.loads(out)
    assert code == 0
    assert all(abs(a - b) < 1e-6 for a, b in zip(rep["ladder"], [1, 3, 5, 7, 9]))
    assert rep["intertwiner_isometry_defect"] < 1e-8


def test_rep_apply_csv(capsys, tmp_path):
    out_csv = tmp_path / "o.csv"
    code, _, _ = run(capsys, "rep", "g4delta:δ=1", "--Z", "1,0.5", "--M", "32",
                     "--element", "0.5,0.1,0,0", "--out", str(out_csv))
    lines = out_csv.read_text().splitlines()
    assert code == 0 and lines[0] == "q,re,im" and len(lines) == 33


def test_quantize_pedersen(capsys):
    code, out, _ = run(capsys, "quantize", "--group", "heis1", "--scheme", "pedersen",
                       "--symbol", "gauss:prec=1,1", "--Z", "1")
    rep = json.loads(out)
    assert code == 0 and abs(rep["trace"][0] - 1.0) < 1e-8


def test_quantize_kn_csv(capsys, tmp_path):
    pts = tmp_path / "pts.csv"
    pts.write_text("q,p,s\n0.1,0.2,0.3\n-0.5,0.4,0.0\n")
    out = tmp_path / "out.csv"
    code, _, _ = run(capsys, "quantize", "--group", "heis1", "--scheme", "kn", "--symbol",
                     "gauss:prec=1,1,1,1,1,1", "--apply", str(pts), "--function",
                     "gauss:prec=1,1,1", "--out", str(out))
    rows = out.read_text().splitlines()
    assert code == 0 and len(rows) == 3


def test_verify_exit_codes_and_determinism(capsys, tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    code, _, _ = run(capsys, "verify", "--group", "heis1", "--suite", "rep", "--json", str(p1))
    assert code == 0
    run(capsys, "verify", "--group", "heis1", "--suite", "rep", "--json", str(p2))
    assert p1.read_bytes() == p2.read_bytes()
    rep = json.loads(p1.read_text())
    assert rep["config"]["M"] == 128 and rep["config"]["seed"] == 0
    code, _, _ = run(capsys, "verify", "--group", "heis1", "--suite", "rep", "--tol",
                     "harmonic_ladder=0")
    assert code == 1


def test_thread_count_does_not_change_results(tmp_path):
    outs = []
    for threads in ("1", "4"):
        p = tmp_path / f"r{threads}.json"
        subprocess.run([sys.executable, "-m", "orbitquant", "verify", "--group", "heis1",
                        "--suite", "cor42", "--json", str(p)], check=True,
                       capture_output=True, env={"ORBITQUANT_THREADS": threads,
                                                 "PATH": "/usr/bin:/bin"})
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_symclass(capsys):
    code, out, _ = run(capsys, "symclass", "--group", "n5_2", "--rockland")
    rep = json.loads(out)
    assert code == 0 and rep["rockland"]["order"] == 120 and rep["rockland"]["homogeneity"]["pass"]
    code, out, _ = run(capsys, "symclass", "--group", "heis1", "--taylor", "2")
    assert json.loads(out)["taylor"]["0,0,1"] == "-x0*x1/2 + x2"
    code, out, _ = run(capsys, "symclass", "--group", "heis1", "--symbol",
                       "gauss:prec=1,1,1,1,1,1", "--alpha", "1,0,0", "--M", "64")
    rep = json.loads(out)["seminorm"]
    assert code == 0 and rep["lower_bound"] and rep["value"] > 0


def test_internal_error_code(capsys, monkeypatch):
    import orbitquant.cli as cli

    def boom(args):
        raise RuntimeError("boom")

    monkeypatch.setattr(cli, "cmd_catalog", boom)
    parser = cli.build_parser()
    monkeypatch.setattr(cli, "build_parser", lambda: _rebind(parser, boom))
    assert cli.main(["catalog", "list"]) == 3


def _rebind(parser, fn):
    for action in parser._subparsers._group_actions:
        action.choices["catalog"].set_defaults(func=fn)
    return parser


def test_verify_all_delta(capsys):
    code, out, _ = run(capsys, "verify", "--group", "g4delta:δ=1", "--suite", "all")
    rep = json.loads(out)
    assert code == 0 and rep["all_pass"] and rep["passed"] >= 12
