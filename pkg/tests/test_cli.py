import json

import numpy as np
import pytest

from posmap import cli, linalg, regions
from posmap.maps import MapKind, MapParams, choi_matrix


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_flags(line):
    return {k: v for k, v in (tok.split("=") for tok in line.split())}


def test_classify_positive_band(capsys):
    code, out, _ = run(capsys, "classify", "--alpha", "0.5", "--beta", "0")
    assert code == 0
    flags = parse_flags(out.strip())
    assert flags["positive"] == "1"
    assert flags["cp"] == "0"
    assert flags["two_positive"] == "0"
    assert flags["pos_not_cp"] == "1"


def test_classify_two_positive_band(capsys):
    code, out, _ = run(capsys, "classify", "--alpha", "2.9", "--beta", "-1")
    assert code == 0
    assert parse_flags(out.strip())["two_pos_not_cp"] == "1"


def test_classify_json_and_numeric_mode(capsys):
    code, out, _ = run(capsys, "classify", "--alpha", "1", "--beta", "0", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["cp"] == 1
    code, out, _ = run(capsys, "classify", "--alpha", "1", "--beta", "0",
                       "--mode", "numeric", "--json")
    numeric = json.loads(out)
    assert code == 0
    assert all(numeric[k] == payload[k] for k in ("positive", "two_positive", "cp", "ccp"))


def test_classify_n4(capsys):
    code, out, _ = run(capsys, "classify", "--alpha", "1", "--beta", "0", "--n", "4")
    assert code == 0
    flags = parse_flags(out.strip())
    assert flags["positive"] == "1"
    assert flags["cp"] == ""


def test_scan_writes_outputs(capsys, tmp_path):
    csv = tmp_path / "grid.csv"
    svgs = tmp_path / "svgs"
    fig = tmp_path / "fig.png"
    code, out, _ = run(
        capsys, "scan", "--res", "11", "--mode", "compare",
        "--out-csv", str(csv), "--out-svg-dir", str(svgs), "--out-fig", str(fig),
    )
    assert code == 0
    assert csv.exists() and fig.exists()
    for layer in ("positive", "cp", "pos_not_cp", "decomp_suff"):
        assert (svgs / f"layer_{layer}.svg").exists()
    assert "0 mismatched cells" in out


def test_scan_rejects_bad_range(capsys):
    code, _, err = run(capsys, "scan", "--amin", "4", "--amax", "-4")
    assert code == 1
    assert "error" in err


def test_verify_default_grid(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    lines = out.splitlines()
    machine = lines[lines.index("--") + 1:]
    rows = [ln.split() for ln in machine if ln]
    assert len(rows) == 4 * 25
    assert all(row[4] == "1" for row in rows)
    assert all(float(row[3]) <= 1e-8 for row in rows)


def test_verify_points_file(capsys, tmp_path):
    pts = tmp_path / "pts.txt"
    pts.write_text("# alpha beta\n0.5 -0.5\n1 1\n")
    code, out, _ = run(capsys, "verify", "--points", str(pts))
    assert code == 0
    lines = out.splitlines()
    machine = [ln.split() for ln in lines[lines.index("--") + 1:] if ln]
    assert len(machine) == 4 * 2
    assert all(row[4] == "1" for row in machine)


def test_oracle_lines(capsys):
    code, out, _ = run(capsys, "oracle", "--alpha", "0.5", "--beta", "0",
                       "--k", "2", "--trials", "20", "--seed", "3")
    assert code == 0
    lines = out.strip().splitlines()
    names = [ln.split()[0] for ln in lines]
    assert names == ["k_positive", "completely_positive", "monte_carlo"]
    for ln in lines:
        toks = ln.split()
        assert toks[1] == "0.5" and toks[2] == "0"
        assert toks[4] in ("true", "false")
        float(toks[5])
    assert lines[0].split()[4] == "false"


def test_choi_dump_round_trip(capsys, tmp_path):
    path = tmp_path / "choi.txt"
    code, _, _ = run(capsys, "choi", "--alpha", "1.25", "--beta", "-0.5",
                     "--kind", "phi2", "--out", str(path))
    assert code == 0
    loaded = linalg.load_matrix(path)
    expected = choi_matrix(MapKind.PHI2, MapParams(1.25, -0.5, 3))
    assert np.array_equal(loaded, expected)


def test_choi_to_stdout(capsys):
    code, out, _ = run(capsys, "choi", "--alpha", "0", "--beta", "0")
    assert code == 0
    assert out.splitlines()[0] == "27 27"


def test_usage_errors_exit_1(capsys):
    assert run(capsys, "classify", "--alpha", "1")[0] == 1        # missing --beta
    assert run(capsys, "frobnicate")[0] == 1                      # unknown command
    assert run(capsys, "classify", "--alpha", "1", "--beta", "0", "--n", "2")[0] == 1


def test_help_exits_zero():
    with pytest.raises(SystemExit) as exc:
        cli.main(["--help"])
    assert exc.value.code == 0


def test_consistency_violation_exits_2(capsys, monkeypatch):
    def boom(_):
        raise regions.ConsistencyError("forced")

    monkeypatch.setattr(regions, "classify", boom)
    code, _, err = run(capsys, "classify", "--alpha", "1", "--beta", "0")
    assert code == 2
    assert "consistency" in err
