"""Command-line front end.

Exit codes: 0 on success, 2 on any validation problem (unknown flags,
malformed JSON, module precondition violations), 3 when a solver gives
up (bracket failures, non-convergence, resolution drift).  All tables
are CSV with a header row, comma separators, LF line endings, and 15
significant digits; reruns with the same arguments and seeds produce
identical bytes.  Setting SHARPMULT_THREADS caps the thread count of
the numerical backends.
"""

import argparse
import json
import os
import sys

import numpy as np

from .bellman import BracketError, EnvelopeNonConvergence, estimate_C
from .constants import burkholder_constant, choi_approx, choi_bounds, cpbB_bounds
from .martingales import ResolutionError, dp_optimal_ratio
from .symbols import check_properties, symbol_from_json
from .torus import apply_multiplier, estimate_norm_lower, read_grid, write_grid
from .witness import CertificationVoid, certify_lower_bound

_THREAD_VARS = (
    "OMP_NUM_THREADS",
    "OPENBLAS_NUM_THREADS",
    "MKL_NUM_THREADS",
    "NUMEXPR_NUM_THREADS",
)


def _cap_threads() -> None:
    raw = os.environ.get("SHARPMULT_THREADS")
    if raw is None:
        return
    try:
        count = int(raw)
    except ValueError:
        raise ValueError(f"SHARPMULT_THREADS must be a positive integer, got {raw!r}")
    if count < 1:
        raise ValueError(f"SHARPMULT_THREADS must be a positive integer, got {raw!r}")
    for var in _THREAD_VARS:
        os.environ[var] = str(count)


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.15g}"
    return str(value)


def _table(header, rows) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def _write_text(path: str, text: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _load_symbol(spec: str):
    text = spec
    if not spec.lstrip().startswith("{"):
        try:
            with open(spec) as fh:
                text = fh.read()
        except OSError as exc:
            raise ValueError(f"cannot read symbol spec: {exc}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed symbol spec JSON: {exc}")
    return symbol_from_json(doc)


def _cmd_constants(args) -> str:
    rows = []
    for p in args.p:
        lo, hi = choi_bounds(p)
        c_lo, c_hi = cpbB_bounds(p, args.b, args.B)
        rows.append(
            (p, burkholder_constant(p), lo, hi, choi_approx(p), c_lo, c_hi)
        )
    header = ("p", "burkholder", "choi_lo", "choi_hi", "choi_series", "c_lo", "c_hi")
    return _table(header, rows)


def _cmd_symbol(args) -> str:
    symbol = _load_symbol(args.spec)
    if args.at:
        rows = []
        for token in args.at:
            xi = np.array([float(t) for t in token.split(",")], dtype=float)
            rows.append((token.replace(",", ";"), float(np.real(symbol(xi)))))
        return _table(("point", "value"), rows)
    if args.check is not None:
        report = check_properties(symbol, args.check, args.seed)
        header = (
            "family",
            "d",
            "samples",
            "seed",
            "realness",
            "evenness",
            "homogeneity",
        )
        row = (
            symbol.family,
            symbol.d,
            report.samples,
            report.seed,
            report.realness,
            report.evenness,
            report.homogeneity,
        )
        return _table(header, [row])
    header = ("family", "d", "is_real", "is_even", "is_homogeneous0")
    row = (
        symbol.family,
        symbol.d,
        int(symbol.is_real),
        int(symbol.is_even),
        int(symbol.is_homogeneous0),
    )
    return _table(header, [row])


def _cmd_apply(args) -> str:
    symbol = _load_symbol(args.spec)
    grid = read_grid(args.infile)
    out = apply_multiplier(grid, symbol)
    write_grid(args.outfile, out)
    return _table(("d", "n", "outfile"), [(out.d, out.n, args.outfile)])


def _cmd_norm(args) -> str:
    symbol = _load_symbol(args.spec)
    best, trace = estimate_norm_lower(
        symbol, args.p, args.n, args.iterations, args.seed, return_trace=True
    )
    text = _table(
        ("p", "n", "iterations", "seed", "lower_bound"),
        [(args.p, args.n, args.iterations, args.seed, best)],
    )
    if args.trace:
        _write_text(args.trace, _table(("iter", "ratio"), trace))
    return text


def _cmd_bellman(args) -> str:
    value, history = estimate_C(
        args.p,
        args.b,
        args.B,
        tol_C=args.tol_C,
        resolution=args.resolution,
        return_history=True,
    )
    text = _table(
        ("p", "b", "B", "resolution", "tol_C", "C"),
        [(args.p, args.b, args.B, args.resolution, args.tol_C, value)],
    )
    if args.history:
        rows = [(i, lo, hi) for i, (lo, hi) in enumerate(history)]
        _write_text(args.history, _table(("step", "lo", "hi"), rows))
    return text


def _cmd_witness(args) -> str:
    symbol = _load_symbol(args.spec)
    cert = certify_lower_bound(
        symbol, args.p, args.N, budget=args.budget, seed=args.seed
    )
    text = cert.to_json() + "\n"
    if args.out:
        _write_text(args.out, text)
    return text


def _cmd_dp(args) -> str:
    rows = []
    for N in range(1, args.N + 1):
        value = dp_optimal_ratio(
            args.p, args.b, args.B, N, value_grid_resolution=args.resolution
        )
        rows.append((args.p, args.b, args.B, args.resolution, N, value))
    return _table(("p", "b", "B", "resolution", "N", "ratio"), rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sharpmult",
        description="Sharp martingale/multiplier constants, solvers, certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("constants", help="closed-form constants table")
    c.add_argument("--p", type=float, nargs="+", required=True)
    c.add_argument("--b", type=float, default=-1.0)
    c.add_argument("--B", type=float, default=1.0)
    c.set_defaults(func=_cmd_constants)

    s = sub.add_parser("symbol", help="evaluate or test a symbol spec")
    s.add_argument("--spec", required=True, help="path or inline JSON")
    s.add_argument("--check", type=int, default=None, metavar="SAMPLES")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--at", action="append", metavar="X1,...,XD")
    s.set_defaults(func=_cmd_symbol)

    a = sub.add_parser("apply", help="apply a symbol to a stored grid")
    a.add_argument("--spec", required=True)
    a.add_argument("--infile", required=True)
    a.add_argument("--outfile", required=True)
    a.set_defaults(func=_cmd_apply)

    n = sub.add_parser("norm", help="power-iteration norm lower bound")
    n.add_argument("--spec", required=True)
    n.add_argument("--p", type=float, required=True)
    n.add_argument("--n", type=int, required=True)
    n.add_argument("--iterations", type=int, default=200)
    n.add_argument("--seed", type=int, default=0)
    n.add_argument("--trace", help="write per-iteration ratios to this CSV")
    n.set_defaults(func=_cmd_norm)

    b = sub.add_parser("bellman", help="sharp-constant estimate by bisection")
    b.add_argument("--p", type=float, required=True)
    b.add_argument("--b", type=float, required=True)
    b.add_argument("--B", type=float, required=True)
    b.add_argument("--tol-C", type=float, default=1e-3, dest="tol_C")
    b.add_argument("--resolution", type=int, default=4096)
    b.add_argument("--history", help="write bracket history to this CSV")
    b.set_defaults(func=_cmd_bellman)

    w = sub.add_parser("witness", help="transference certificate JSON")
    w.add_argument("--spec", required=True)
    w.add_argument("--p", type=float, required=True)
    w.add_argument("--N", type=int, required=True)
    w.add_argument("--budget", type=int, default=50)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--out", help="also write the certificate to this path")
    w.set_defaults(func=_cmd_witness)

    d = sub.add_parser("dp", help="exact depth-limited optima over N")
    d.add_argument("--p", type=float, required=True)
    d.add_argument("--b", type=float, required=True)
    d.add_argument("--B", type=float, required=True)
    d.add_argument("--N", type=int, required=True, help="table covers 1..N")
    d.add_argument("--resolution", type=int, default=4096)
    d.set_defaults(func=_cmd_dp)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _cap_threads()
        text = args.func(args)
    except CertificationVoid as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (BracketError, EnvelopeNonConvergence, ResolutionError) as exc:
        sys.stderr.write(f"solver failure: {exc}\n")
        return 3
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except RuntimeError as exc:
        sys.stderr.write(f"solver failure: {exc}\n")
        return 3
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
