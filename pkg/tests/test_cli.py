import csv
import subprocess
import sys

import numpy as np
import pytest

from lrnufft import exec_nufft1, exec_nufft3, exec_nufft2d2, plan_nufft1, plan_nufft3, plan_nufft2d2
from lrnufft.cli import bench_rows, main, read_columns, read_complex
from lrnufft.oracle import perturbed_grid, worst_grid
from conftest import gaussian


def num(v):
    return repr(float(v))


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)
    return str(path)


def write_vector(path, v):
    return write_csv(path, ["re", "im"], [[num(z.real), num(z.imag)] for z in np.asarray(v, complex)])


def read_table(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture
def files(tmp_path, rng):
    N = 32
    x = perturbed_grid(N, 1 / 8, rng)
    return {
        "N": N,
        "x": write_csv(tmp_path / "x.csv", ["x"], [[num(v)] for v in x]),
        "grid": write_csv(tmp_path / "grid.csv", ["x"], [[num(j / N)] for j in range(N)]),
        "c": write_vector(tmp_path / "c.csv", gaussian(rng, N)),
        "dir": tmp_path,
    }


# transform ----------------------------------------------------------------

def test_equispaced_matches_plain_fft(files):
    a, b = files["dir"] / "a.csv", files["dir"] / "b.csv"
    assert main(["transform", "--type", "2", "--in", files["grid"], files["c"], "--out", str(a)]) == 0
    assert main(["transform", "--type", "2", "--plain-fft", "--in", files["grid"], files["c"], "--out", str(b)]) == 0
    assert np.array_equal(read_complex(a), read_complex(b))


def test_round_trip(files):
    f, back = files["dir"] / "f.csv", files["dir"] / "back.csv"
    assert main(["transform", "--type", "2", "--in", files["x"], files["c"], "--out", str(f)]) == 0
    assert main(["transform", "--type", "inv2", "--tol", "1e-12", "--in", files["x"], str(f), "--out", str(back)]) == 0
    c = read_complex(files["c"])
    assert np.linalg.norm(read_complex(back) - c) <= 1e-9 * np.linalg.norm(c)


def test_reports_rank_and_timing(files, capsys):
    main(["transform", "--type", "2", "--in", files["x"], files["c"], "--out", str(files["dir"] / "f.csv")])
    err = capsys.readouterr().err
    assert "K=11" in err and "gamma=0.125" in err
    assert "plan_seconds=" in err and "online_seconds=" in err


def test_other_types(tmp_path, rng):
    N = 16
    omega = rng.uniform(0, N, N)
    x = rng.uniform(0, 1, N)
    c = gaussian(rng, N)
    om = write_csv(tmp_path / "om.csv", ["omega"], [[num(v)] for v in omega])
    xs = write_csv(tmp_path / "x.csv", ["x"], [[num(v)] for v in x])
    cs = write_vector(tmp_path / "c.csv", c)
    out = tmp_path / "out.csv"

    assert main(["transform", "--type", "1", "--in", om, cs, "--out", str(out)]) == 0
    assert np.array_equal(read_complex(out), exec_nufft1(plan_nufft1(omega), c))

    assert main(["transform", "--type", "3", "--in", xs, om, cs, "--out", str(out)]) == 0
    assert np.array_equal(read_complex(out), exec_nufft3(plan_nufft3(x, omega), c))

    f = exec_nufft1(plan_nufft1(omega), c)
    fs = write_vector(tmp_path / "f.csv", f)
    assert main(["transform", "--type", "inv1", "--tol", "1e-12", "--in", om, fs, "--out", str(out)]) == 0
    assert np.linalg.norm(exec_nufft1(plan_nufft1(omega), read_complex(out)) - f) <= 1e-9 * np.linalg.norm(f)


def test_2d(tmp_path, rng):
    samples = rng.uniform(0, 1, (10, 2))
    C = gaussian(rng, 3, 4)
    xy = write_csv(tmp_path / "xy.csv", ["x", "y"], [[num(a), num(b)] for a, b in samples])
    rows = [[k1, k2, num(C[k1, k2].real), num(C[k1, k2].imag)] for k1 in range(3) for k2 in range(4)]
    cm = write_csv(tmp_path / "C.csv", ["k1", "k2", "re", "im"], rows[::-1])
    out = tmp_path / "f.csv"
    assert main(["transform", "--type", "2d2", "--in", xy, cm, "--out", str(out)]) == 0
    assert np.array_equal(read_complex(out), exec_nufft2d2(plan_nufft2d2(samples, 3, 4), C))


def test_missing_file(files, capsys):
    assert main(["transform", "--type", "2", "--in", "/nonexistent.csv", files["c"]]) == 2
    assert "cannot open" in capsys.readouterr().err


def test_wrong_number_of_inputs(files):
    assert main(["transform", "--type", "3", "--in", files["x"], files["c"]]) == 2


@pytest.mark.parametrize("body,needle", [
    ("x\n0.1\nabc\n", ":3:"),
    ("x\n0.1\n0.2,0.3\n", ":3:"),
    ("y\n0.1\n", ":1: missing column"),
    ("", ":1: missing header"),
    ("x\nnan\n", "non-finite"),
])
def test_malformed_csv(files, capsys, body, needle):
    bad = files["dir"] / "bad.csv"
    bad.write_text(body)
    assert main(["transform", "--type", "2", "--in", str(bad), files["c"]]) == 2
    assert needle in capsys.readouterr().err


def test_incomplete_matrix(tmp_path):
    xy = write_csv(tmp_path / "xy.csv", ["x", "y"], [["0.1", "0.2"]])
    cm = write_csv(tmp_path / "C.csv", ["k1", "k2", "re", "im"], [[0, 0, 1, 0], [1, 1, 1, 0]])
    assert main(["transform", "--type", "2d2", "--in", xy, cm]) == 2


def test_domain_errors(files, tmp_path):
    assert main(["transform", "--type", "2", "--eps", "2", "--in", files["x"], files["c"]]) == 3
    short = write_vector(tmp_path / "short.csv", np.ones(3))
    assert main(["transform", "--type", "2", "--in", files["x"], short]) == 3
    half = write_csv(tmp_path / "h.csv", ["x"], [["0"], ["0.25"], ["0.5"], ["0.625"]])
    assert main(["transform", "--type", "inv2", "--in", half, write_vector(tmp_path / "f.csv", np.ones(4))]) == 3


# verify -------------------------------------------------------------------

def test_verify_pass(tmp_path):
    out = tmp_path / "v.csv"
    assert main(["verify", "--n", "64", "--gamma", "0.5", "0", "--eps", "2.2e-16", "--out", str(out)]) == 0
    rows = read_table(out)
    assert list(rows[0]) == ["N", "gamma", "eps", "K", "rel_error", "bound", "pass"]
    assert rows[0]["K"] == "16" and float(rows[0]["rel_error"]) <= 64 * 2.2e-16
    assert rows[1]["K"] == "1"
    assert all(r["pass"] == "1" for r in rows)


def test_verify_failure_still_writes(tmp_path):
    # at N = 16 the tuned rank leaves this row above N * eps
    out = tmp_path / "v.csv"
    assert main(["verify", "--n", "16", "--gamma", "0.03125", "--eps", "2.2e-16", "--out", str(out)]) == 1
    rows = read_table(out)
    assert len(rows) == 1 and rows[0]["pass"] == "0"


def test_verify_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["verify", "--n", "32", "--gamma", "0.125", "--trials", "3", "--seed", "5"]
    main(args + ["--out", str(a)])
    main(args + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.xfail(
    strict=True,
    reason="the factors are least accurate at frequency 0, where decaying coefficients put their weight",
)
def test_verify_decaying_smaller(tmp_path):
    g, d = tmp_path / "g.csv", tmp_path / "d.csv"
    args = ["verify", "--n", "256", "--gamma", "0.5", "--eps", "2.2e-16", "--trials", "3"]
    main(args + ["--out", str(g)])
    main(args + ["--coeffs", "decaying", "--out", str(d)])
    eg = [float(r["rel_error"]) for r in read_table(g)]
    ed = [float(r["rel_error"]) for r in read_table(d)]
    assert all(b < a for a, b in zip(eg, ed))


# bench and cgstudy --------------------------------------------------------

def test_bench_columns(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "--n", "256", "512", "--eps", "2.2e-16", "9.8e-4", "--reps", "2", "--out", str(out)]) == 0
    rows = read_table(out)
    assert list(rows[0]) == ["N", "eps", "K", "plan_seconds", "exec_seconds",
                             "fft_seconds_baseline", "exec_over_fft_ratio"]
    assert [r["K"] for r in rows] == ["16", "7", "16", "7"]
    assert all(float(r["exec_seconds"]) > 0 for r in rows)


def test_bench_rows_helper():
    rows = bench_rows([128], [1.2e-7], gamma=0.0, reps=1)
    assert rows[0][2] == 1


def test_cgstudy(tmp_path):
    out = tmp_path / "cg.csv"
    assert main(["cgstudy", "--n", "64", "256", "--gamma", "0", "0.125", "--trials", "2", "--out", str(out)]) == 0
    rows = read_table(out)
    assert list(rows[0]) == ["N", "gamma", "trial", "iterations", "converged"]
    assert all(r["iterations"] == "1" for r in rows if float(r["gamma"]) == 0)
    assert all(r["converged"] == "1" for r in rows)


def test_cgstudy_rejects_half():
    assert main(["cgstudy", "--n", "16", "--gamma", "0.5"]) == 3


def test_threads_flag(files):
    assert main(["transform", "--type", "2", "--threads", "2", "--in", files["x"], files["c"],
                 "--out", str(files["dir"] / "f.csv")]) == 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "lrnufft", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "transform" in res.stdout


def test_worst_grid_file_round_trip(tmp_path):
    x = worst_grid(8, 0.25)
    path = write_csv(tmp_path / "x.csv", ["x"], [[num(v)] for v in x])
    assert np.array_equal(read_columns(path, ["x"])[:, 0], x)
