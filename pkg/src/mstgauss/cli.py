"""
Command-line interface.

    mstgauss classify-scan   --grid-n 200 --out fig1.csv
    mstgauss bound-scan      --grid-n 200 --out fig2.csv
    mstgauss pure-curves     --out fig3.csv
    mstgauss conjecture-check --m-max 6 --out ratios.csv
    mstgauss state-info      --lambda 0.5 --v 0.2

Exit codes: 0 success, 1 usage error, 2 internal consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
import warnings
from pathlib import Path

from . import scans
from .bounds import SeparableStateWarning, pure_crossover, teleport_bound, to_base, upper_bound
from .gaussian import MstState, mst_covariance, symplectic_eigenvalues, von_neumann_entropy
from .separability import classify, ppt_lambda_threshold

log = logging.getLogger("mstgauss")

EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2
CONJECTURE_TOL = 1e-8
PPT_MATCH_TOL = 1e-6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int,)) and not isinstance(value, bool):
        return str(value)
    return format(float(value), ".12g")


def _round(value):
    if isinstance(value, float):
        return float(format(value, ".12g"))
    return value


def _range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi', got {text!r}") from None
    return lo, hi


def write_table(header, rows, out: str | None, fmt_name: str) -> None:
    if fmt_name == "json":
        payload = [dict(zip(header, (_round(v) for v in row))) for row in rows]
        text = json.dumps(payload, indent=1) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
        text = buf.getvalue()
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from exc


def write_sidecar(out: str | None, suffix: str, payload: dict) -> None:
    text = json.dumps({k: _round(v) for k, v in payload.items()}, indent=1, sort_keys=True) + "\n"
    if out is None:
        sys.stderr.write(text)
        return
    path = Path(out)
    side = path.with_name(path.stem + suffix)
    try:
        side.write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise UsageError(f"cannot write {side}: {exc}") from exc


def _config(args) -> scans.ScanConfig:
    try:
        return scans.ScanConfig(
            grid_n=args.grid_n,
            lambda_range=args.lambda_range,
            v_range=args.v_range,
            log_base=args.log_base,
            tol=args.tol,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_classify_scan(args) -> int:
    cfg = _config(args)
    header, rows = scans.classify_scan(cfg)
    write_table(header, rows, args.out, args.format)
    bad = scans.classify_mismatches(rows)
    if bad:
        for lam, v, closed, generic in bad:
            log.error("class mismatch at lambda=%s v=%s: closed=%s generic=%s",
                      fmt(lam), fmt(v), closed, generic)
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_bound_scan(args) -> int:
    cfg = _config(args)
    header, rows = scans.bound_scan(cfg)
    write_table(header, rows, args.out, args.format)
    return EXIT_OK


def cmd_pure_curves(args) -> int:
    cfg = _config(args)
    header, rows = scans.pure_curves(cfg)
    write_table(header, rows, args.out, args.format)
    lo, hi = cfg.lambda_range
    try:
        lam_star = pure_crossover(lo, hi)
    except ValueError:
        lam_star = None
    write_sidecar(args.out, ".crossover.json", {
        "lambda_star": lam_star,
        "log_base": cfg.log_base,
        "lambda_lo": lo,
        "lambda_hi": hi,
    })
    return EXIT_OK


def cmd_conjecture_check(args) -> int:
    if args.m_max < 3:
        raise UsageError("--m-max must be >= 3")
    cfg = _config(args)
    header, rows = scans.conjecture_rows(cfg, args.m_max)
    write_table(header, rows, args.out, args.format)
    max_err = max((row[-1] for row in rows), default=0.0)
    summary = {"max_abs_err": max_err, "m_max": args.m_max, "points": len(rows)}
    consistent = max_err <= CONJECTURE_TOL
    for m in range(3, args.m_max + 1):
        for v in cfg.vs:
            key = f"m{m}_v{fmt(v)}"
            lam = scans.ppt_threshold_bisect(float(v), m)
            summary[f"ppt_lambda_{key}"] = None if math.isnan(lam) else lam
            if m == 3 and not math.isnan(lam):
                closed = ppt_lambda_threshold(float(v))
                summary[f"ppt_closed_{key}"] = closed
                consistent &= abs(lam - closed) <= PPT_MATCH_TOL
    write_sidecar(args.out, ".summary.json", summary)
    print(f"max abs_err = {fmt(max_err)} over {len(rows)} rows")
    return EXIT_OK if consistent else EXIT_INCONSISTENT


def state_from_args(args) -> MstState:
    if (args.r is None) == (args.lam is None):
        raise UsageError("give exactly one of --r and --lambda")
    if (args.N is None) == (args.v is None):
        raise UsageError("give exactly one of --N and --v")
    try:
        if args.lam is not None and not 0 <= args.lam < 1:
            raise ValueError(f"lambda must lie in [0, 1), got {args.lam}")
        if args.v is not None and not 0 <= args.v < 1:
            raise ValueError(f"v must lie in [0, 1), got {args.v}")
        r = args.r if args.r is not None else math.atanh(args.lam)
        N = args.N if args.N is not None else args.v / (1.0 - args.v)
        return MstState(m=args.m, r=r, N=N)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def state_info(state: MstState, log_base: str = "nats") -> dict:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SeparableStateWarning)
        bound = upper_bound(state)
    info = {
        "m": state.m,
        "r": state.r,
        "N": state.N,
        "v": state.v,
        "lambda": state.lam,
        "t": state.t,
        "s": state.s,
        "symplectic_eigenvalues": [float(x) for x in symplectic_eigenvalues(mst_covariance(state))],
        "entropy": to_base(von_neumann_entropy(state), log_base),
        "e3ur": to_base(bound.value, log_base),
        "argmin_r": bound.argmin_r,
        "log_base": log_base,
    }
    if state.m == 3:
        info["classification"] = classify(state).value
        if state.is_pure:
            info["teleport"] = to_base(teleport_bound(state), log_base)
    return info


def cmd_state_info(args) -> int:
    info = state_info(state_from_args(args), args.log_base)
    rounded = {k: [_round(x) for x in v] if isinstance(v, list) else _round(v) for k, v in info.items()}
    print(json.dumps(rounded, indent=1))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mstgauss", allow_abbrev=False, description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    def scan_parser(name, func, help_text, grid_n):
        p = sub.add_parser(name, help=help_text, allow_abbrev=False)
        p.add_argument("--grid-n", type=int, default=grid_n)
        p.add_argument("--lambda-range", type=_range, default=(0.001, 0.999))
        p.add_argument("--v-range", type=_range, default=(0.001, 0.999))
        p.add_argument("--log-base", choices=("nats", "bits"), default="nats")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--tol", type=float, default=1e-9)
        p.set_defaults(func=func)
        return p

    scan_parser("classify-scan", cmd_classify_scan, "separability classes over (lambda, v)", 200)
    scan_parser("bound-scan", cmd_bound_scan, "E_3ur over (lambda, v)", 200)
    scan_parser("pure-curves", cmd_pure_curves, "pure-state bounds against lambda", 200)
    cc = scan_parser("conjecture-check", cmd_conjecture_check, "E_mur / E_2ur against m/2", 10)
    cc.add_argument("--m-max", type=int, default=6)

    si = sub.add_parser("state-info", help="derived quantities of one state as JSON", allow_abbrev=False)
    si.add_argument("--m", type=int, default=3)
    si.add_argument("--r", type=float)
    si.add_argument("--lambda", dest="lam", type=float)
    si.add_argument("--N", type=float)
    si.add_argument("--v", type=float)
    si.add_argument("--log-base", choices=("nats", "bits"), default="nats")
    si.set_defaults(func=cmd_state_info)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except UsageError as exc:
        log.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
