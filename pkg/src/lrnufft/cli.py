"""``nufft`` command line: run transforms on CSV files, verify, benchmark.

Exit codes: 0 success, 1 verification failure, 2 I/O or CSV error,
3 domain error (bad parameters, CG failure).
"""

import argparse
import csv
import statistics
import sys
import time

import numpy as np
import scipy.fft as sfft

from . import fft, oracle
from .inverse import CGNotConverged, inufft1, inufft2
from .transform2d import exec_nufft2d2, plan_nufft2d2
from .transforms import (
    exec_nufft1,
    exec_nufft2,
    exec_nufft3,
    plan_nufft1,
    plan_nufft2,
    plan_nufft3,
)

EXIT_OK, EXIT_FAIL, EXIT_IO, EXIT_DOMAIN = 0, 1, 2, 3


class CsvError(Exception):
    pass


def read_columns(path, names):
    """Read float columns `names` from a CSV file with a header row."""
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise CsvError(f"{path}: cannot open ({exc.strerror})") from exc
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise CsvError(f"{path}:1: missing header row")
        header = [h.strip() for h in header]
        missing = [n for n in names if n not in header]
        if missing:
            raise CsvError(f"{path}:1: missing column(s) {', '.join(missing)}")
        idx = [header.index(n) for n in names]
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise CsvError(f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}")
            try:
                rows.append([float(row[i]) for i in idx])
            except ValueError as exc:
                raise CsvError(f"{path}:{lineno}: {exc}") from exc
    arr = np.array(rows, dtype=float).reshape(-1, len(names))
    if not np.all(np.isfinite(arr)):
        raise CsvError(f"{path}: non-finite value")
    return arr


def read_complex(path):
    a = read_columns(path, ["re", "im"])
    return a[:, 0] + 1j * a[:, 1]


def read_matrix(path):
    a = read_columns(path, ["k1", "k2", "re", "im"])
    if a.size == 0:
        raise CsvError(f"{path}: empty matrix")
    k1, k2 = a[:, 0].astype(int), a[:, 1].astype(int)
    if np.any(k1 != a[:, 0]) or np.any(k2 != a[:, 1]) or k1.min() < 0 or k2.min() < 0:
        raise CsvError(f"{path}: k1, k2 must be non-negative integers")
    m, n = k1.max() + 1, k2.max() + 1
    C = np.full((m, n), np.nan + 0j)
    C[k1, k2] = a[:, 2] + 1j * a[:, 3]
    if np.isnan(C.real).any():
        raise CsvError(f"{path}: matrix entries missing for a {m}x{n} grid")
    return C


def write_rows(path, header, rows):
    fh = sys.stdout if path in (None, "-") else open(path, "w", newline="")
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    finally:
        if fh is not sys.stdout:
            fh.close()


def write_complex(path, v):
    write_rows(path, ["re", "im"], ([repr(float(z.real)), repr(float(z.imag))] for z in v))


def _log(msg):
    print(msg, file=sys.stderr)


_INPUTS = {
    "1": ("omega", "coeffs"),
    "2": ("x", "coeffs"),
    "3": ("x", "omega", "coeffs"),
    "2d2": ("xy", "matrix"),
    "inv1": ("omega", "values"),
    "inv2": ("x", "values"),
}


def _load(kind, path):
    if kind == "x":
        return read_columns(path, ["x"])[:, 0]
    if kind == "omega":
        return read_columns(path, ["omega"])[:, 0]
    if kind == "xy":
        return read_columns(path, ["x", "y"])
    if kind == "matrix":
        return read_matrix(path)
    return read_complex(path)


def cmd_transform(args):
    kinds = _INPUTS[args.type]
    if not args.inputs or len(args.inputs) != len(kinds):
        _log(f"type {args.type} needs --in with {len(kinds)} file(s): {', '.join(kinds)}")
        return EXIT_IO
    data = [_load(k, p) for k, p in zip(kinds, args.inputs)]
    t0 = time.perf_counter()
    if args.type == "2" and args.plain_fft:
        plan, run = None, lambda: fft.fft_forward(data[1])
    elif args.type in ("2", "inv2"):
        plan = plan_nufft2(data[0], args.eps)
        run = (lambda: exec_nufft2(plan, data[1])) if args.type == "2" else (
            lambda: inufft2(plan, data[1], tol=args.tol).solution)
    elif args.type in ("1", "inv1"):
        plan = plan_nufft1(data[0], args.eps)
        run = (lambda: exec_nufft1(plan, data[1])) if args.type == "1" else (
            lambda: inufft1(plan, data[1], tol=args.tol).solution)
    elif args.type == "3":
        plan = plan_nufft3(data[0], data[1], args.eps)
        run = lambda: exec_nufft3(plan, data[2])  # noqa: E731
    else:
        C = data[1]
        plan = plan_nufft2d2(data[0], C.shape[0], C.shape[1], args.eps)
        run = lambda: exec_nufft2d2(plan, C)  # noqa: E731
    t1 = time.perf_counter()
    out = run()
    t2 = time.perf_counter()
    if plan is None:
        _log("plain FFT")
    elif args.type == "2d2":
        _log(f"K1={plan.K1} K2={plan.K2} gamma_x={plan.gamma_x:.6g} gamma_y={plan.gamma_y:.6g}")
    else:
        _log(f"K={plan.K} gamma={plan.gamma:.6g}")
    _log(f"plan_seconds={t1 - t0:.6g} online_seconds={t2 - t1:.6g}")
    write_complex(args.out, out)
    return EXIT_OK


def _coefficients(rng, N, mode):
    c = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    if mode == "decaying":
        c /= np.arange(1, N + 1) ** 2
    return c


def cmd_verify(args):
    rng = np.random.default_rng(args.seed)
    rows, ok = [], True
    for N in args.n:
        for gamma in args.gamma:
            x = oracle.worst_grid(N, gamma)
            for trial in range(args.trials):
                c = _coefficients(rng, N, args.coeffs)
                exact = oracle.nudft_direct(x, np.arange(N), c)
                for eps in args.eps:
                    plan = plan_nufft2(x, eps)
                    err = np.linalg.norm(exec_nufft2(plan, c) - exact) / np.linalg.norm(c)
                    bound = N * eps
                    passed = bool(err <= bound)
                    ok &= passed
                    rows.append([N, repr(gamma), repr(eps), plan.K, f"{err:.6e}", f"{bound:.6e}", int(passed)])
    write_rows(args.out, ["N", "gamma", "eps", "K", "rel_error", "bound", "pass"], rows)
    return EXIT_OK if ok else EXIT_FAIL


def _median_time(fn, reps):
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def bench_rows(ns, epss, gamma=0.5, reps=5, seed=0):
    """Timing rows ``(N, eps, K, plan_s, exec_s, fft_s, exec/fft)``."""
    rng = np.random.default_rng(seed)
    rows = []
    for N in ns:
        x = oracle.worst_grid(N, gamma)
        c = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        fft_s = _median_time(lambda: fft.fft_forward(c), reps)
        for eps in epss:
            plan_s = _median_time(lambda: plan_nufft2(x, eps), max(1, reps // 2))
            plan = plan_nufft2(x, eps)
            exec_s = _median_time(lambda: exec_nufft2(plan, c), reps)
            rows.append((N, eps, plan.K, plan_s, exec_s, fft_s, exec_s / fft_s))
    return rows


def cmd_bench(args):
    rows = bench_rows(args.n, args.eps, args.gamma[0] if args.gamma else 0.5, args.reps, args.seed)
    write_rows(
        args.out,
        ["N", "eps", "K", "plan_seconds", "exec_seconds", "fft_seconds_baseline", "exec_over_fft_ratio"],
        ([N, repr(e), K, f"{p:.6e}", f"{x:.6e}", f"{f:.6e}", f"{r:.4f}"] for N, e, K, p, x, f, r in rows),
    )
    return EXIT_OK


def cg_iterations(N, gamma, tol, rng):
    """CG iterations of one inverse type-II solve on a random perturbed grid."""
    x = oracle.perturbed_grid(N, gamma, rng)
    plan = plan_nufft2(x)
    c = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    try:
        rep = inufft2(plan, exec_nufft2(plan, c), tol=tol)
        return rep.iterations, True
    except CGNotConverged as exc:
        return exc.report.iterations, False


def cmd_cgstudy(args):
    rng = np.random.default_rng(args.seed)
    rows = []
    for N in args.n:
        for gamma in args.gamma:
            if not 0.0 <= gamma < 0.5:
                raise ValueError(f"cgstudy needs gamma in [0, 1/2), got {gamma!r}")
            for trial in range(args.trials):
                its, conv = cg_iterations(N, gamma, args.tol, rng)
                rows.append([N, repr(gamma), trial, its, int(conv)])
    write_rows(args.out, ["N", "gamma", "trial", "iterations", "converged"], rows)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output CSV (default stdout)")
    common.add_argument("--threads", type=int, default=1, help="FFT worker threads")

    p = argparse.ArgumentParser(prog="nufft", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", parents=[common], help="run one transform on CSV input")
    t.add_argument("--type", required=True, choices=sorted(_INPUTS))
    t.add_argument("--in", dest="inputs", nargs="+", metavar="FILE")
    t.add_argument("--eps", type=float, default=2.2e-16)
    t.add_argument("--tol", type=float, default=1e-14)
    t.add_argument("--plain-fft", action="store_true", help="type 2 only: ignore samples, plain FFT")
    t.set_defaults(func=cmd_transform)

    v = sub.add_parser("verify", parents=[common], help="error sweep against the direct sum")
    v.add_argument("--n", type=int, nargs="+", default=[16, 64, 256])
    v.add_argument("--gamma", type=float, nargs="+", default=[0.0, 1 / 32, 1 / 8, 0.5])
    v.add_argument("--eps", type=float, nargs="+", default=[2.2e-16, 1.2e-7, 9.8e-4])
    v.add_argument("--trials", type=int, default=1)
    v.add_argument("--coeffs", choices=["gaussian", "decaying"], default="gaussian")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", parents=[common], help="online-stage timing vs a plain FFT")
    b.add_argument("--n", type=int, nargs="+", default=[2**k for k in range(10, 19, 2)])
    b.add_argument("--eps", type=float, nargs="+", default=[2.2e-16, 1.2e-7, 9.8e-4])
    b.add_argument("--gamma", type=float, nargs="+", default=[0.5])
    b.add_argument("--reps", type=int, default=5)
    b.set_defaults(func=cmd_bench)

    c = sub.add_parser("cgstudy", parents=[common], help="CG iteration counts of the inverse type II")
    c.add_argument("--n", type=int, nargs="+", default=[256, 1024, 4096])
    c.add_argument("--gamma", type=float, nargs="+", default=[0.0, 1 / 32, 1 / 8, 7 / 16])
    c.add_argument("--tol", type=float, default=2.2e-14)
    c.add_argument("--trials", type=int, default=5)
    c.add_argument("--eps", type=float, default=2.2e-16, help="unused; accepted for uniformity")
    c.set_defaults(func=cmd_cgstudy)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with sfft.set_workers(args.threads):
            return args.func(args)
    except CsvError as exc:
        _log(f"error: {exc}")
        return EXIT_IO
    except OSError as exc:
        _log(f"error: {exc}")
        return EXIT_IO
    except (ValueError, CGNotConverged) as exc:
        _log(f"error: {exc}")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
