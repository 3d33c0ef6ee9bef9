import json
import subprocess
import sys

import pytest

from goldendd.cli import HEADER, main
from goldendd.qbeta import BETA, QBeta


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_one(capsys):
    code, out, _ = run(capsys, "expand", "--x", "1", "--n", "8")
    assert code == 0
    assert json.loads(out)["digits"] == [0, 2, 0, 0, 2, 0, 0, 2]


def test_expand_csv(capsys):
    code, out, _ = run(capsys, "expand", "--x", "2b-3", "--n", "5", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == HEADER and lines[1] == "index,digit"
    assert [l.split(",")[1] for l in lines[2:]] == ["0", "0", "0", "0", "2"]


def test_expand_classical(capsys):
    code, out, _ = run(capsys, "expand", "--x", "0.75", "--n", "3", "--system", "classical",
                       "--beta", "2")
    assert code == 0 and json.loads(out)["digits"] == [1, 1, 0]


@pytest.mark.parametrize("argv", [
    ["expand", "--x", "5", "--n", "3"],
    ["expand", "--x", "abc"],
    ["expand", "--x", "0.5", "--system", "classical"],
    ["cylinder", "--block", "25"],
    ["enumerate", "--rank", "0"],
    ["natext", "--x", "1", "--y", "0", "--j", "2", "--n", "1"],
    ["birkhoff", "--iters", "-5"],
])
def test_domain_errors_exit_one(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == ""
    assert set(json.loads(err)) == {"error", "message"}


@pytest.mark.parametrize("argv", [["bogus"], ["expand"], ["expand", "--x", "1", "--nope"],
                                  ["density", "--precision", "10"]])
def test_usage_errors_exit_two(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_cylinder_round_trip(capsys):
    code, out, _ = run(capsys, "cylinder", "--block", "20")
    rec = json.loads(out)
    assert code == 0 and rec["full"] is False
    left = QBeta.from_record(rec["left"])
    assert left == 2 * (BETA - 1)
    assert QBeta.from_record(rec["image"][1]) == BETA


def test_empty_cylinder_reports_empty(capsys):
    code, out, _ = run(capsys, "cylinder", "--block", "33")
    rec = json.loads(out)
    assert code == 0 and rec["empty"] is True and "image" not in rec


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--rank", "4", "--family", "D")
    blocks = [c["block"] for c in json.loads(out)["cylinders"]]
    code2, out2, _ = run(capsys, "enumerate", "--rank", "4", "--family", "D", "--method",
                         "exhaustive")
    assert code == code2 == 0
    assert blocks == [c["block"] for c in json.loads(out2)["cylinders"]]


def test_density_json_is_exact(capsys):
    code, out, _ = run(capsys, "density")
    rec = json.loads(out)
    assert code == 0 and len(rec["pieces"]) == 6
    v = QBeta.from_record(rec["pieces"][-1]["value"])
    assert v == 1 / (16 - 7 * BETA)
    assert abs(rec["pieces"][-1]["value"]["float"] - float(v)) < 1e-15


def test_density_kinds_agree(capsys):
    outs = [run(capsys, "density", "--kind", k)[1] for k in ("golden", "fiber", "tower")]
    pieces = [json.loads(o)["pieces"] for o in outs]
    assert pieces[0] == pieces[1] == pieces[2]


def test_density_classical_float(capsys):
    code, out, _ = run(capsys, "density", "--kind", "classical", "--beta", "2.5")
    assert code == 0 and abs(json.loads(out)["integral_float"] - 1) < 1e-12


def test_density_plot_files(capsys, tmp_path):
    code, _, _ = run(capsys, "density", "--plot-dir", str(tmp_path))
    assert code == 0
    step = (tmp_path / "density_step.dat").read_text().split()
    xs = sorted({float(v) for v in step[0::2]})
    ys = sorted({float(v) for v in step[1::2]})
    assert len(xs) == 7 and len(ys) == 6
    graph = (tmp_path / "map_graph.dat").read_text().strip().split("\n\n")
    assert len(graph) == 3


def test_natext_trajectory(capsys):
    code, out, _ = run(capsys, "natext", "--x", "3/2", "--y", "1", "--steps", "1")
    traj = json.loads(out)["trajectory"]
    assert code == 0 and (traj[1]["j"], traj[1]["n"]) == (2, 1)
    assert QBeta.from_record(traj[1]["y"]) == BETA - 1


def test_natext_tower_and_plot(capsys, tmp_path):
    code, out, _ = run(capsys, "natext", "--x", "1/2", "--y", "1/10", "--steps", "3",
                       "--version-space", "2", "--plot-dir", str(tmp_path), "--levels", "4")
    assert code == 0 and len(json.loads(out)["trajectory"]) == 4
    outline = (tmp_path / "tower_outline.dat").read_text().strip().split("\n\n")
    assert len(outline) == 1 + 2 * 4
    assert len((tmp_path / "orbit.dat").read_text().splitlines()) == 4


def test_natext_empty_orbit_gives_empty_file(capsys, tmp_path):
    code, _, _ = run(capsys, "natext", "--x", "1", "--y", "1", "--steps", "0",
                     "--plot-dir", str(tmp_path))
    assert code == 0 and (tmp_path / "orbit.dat").read_text() == ""


def test_birkhoff_csv(capsys, tmp_path):
    code, out, _ = run(capsys, "birkhoff", "--iters", "100000", "--seed", "7",
                       "--plot-dir", str(tmp_path))
    lines = out.splitlines()
    assert code == 0 and lines[0] == HEADER
    assert lines[1] == "bin_left,bin_right,observed,expected,abs_error"
    rows = [list(map(float, l.split(","))) for l in lines[2:]]
    assert len(rows) == 6 and all(r[4] < 0.01 for r in rows)
    assert (tmp_path / "histogram.dat").exists()


def test_birkhoff_zero_iterations(capsys):
    code, out, _ = run(capsys, "birkhoff", "--iters", "0")
    assert code == 0 and len(out.splitlines()) == 2


@pytest.mark.parametrize("argv", [
    ["birkhoff", "--iters", "50000", "--seed", "3", "--shards", "3"],
    ["density", "--format", "csv"],
    ["natext", "--x", "1/3", "--y", "1/5", "--steps", "20"],
    ["verify", "--suite", "quick"],
])
def test_byte_identical(capsys, argv):
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_precision_env(monkeypatch):
    monkeypatch.setenv("GOLDENDD_PRECISION", "200")
    proc = subprocess.run([sys.executable, "-m", "goldendd.cli", "expand", "--x", "1", "--n", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    x = json.loads(proc.stdout)["x"]
    assert x["precision_bits"] == 200


def test_precision_flag_digits(capsys):
    _, out, _ = run(capsys, "cylinder", "--block", "2", "--precision", "256")
    dec = json.loads(out)["left"]["decimal"]
    assert len(dec.replace(".", "")) > 60


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "quick", "--timing")
    rec = json.loads(out)
    assert code == 0 and rec["passed"]
    assert all(c["status"] == "pass" and "runtime_s" in c for c in rec["checks"])
    assert len({c["id"] for c in rec["checks"]}) == len(rec["checks"])


def test_verify_failure_exit_code(capsys, monkeypatch):
    from goldendd import verify
    bad = verify.Check("broken", "always fails", "exact", lambda b: (False, "x"))
    monkeypatch.setattr(verify, "CHECKS", [bad])
    code, out, _ = run(capsys, "verify", "--suite", "exact", "--format", "csv")
    assert code == 1 and "broken" in out
