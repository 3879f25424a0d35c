"""Command-line driver: ``hazyqd {mutual-info,redundancy,bimodal,validate}``."""

from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ThreadPoolExecutor

from .config import ConfigError, SweepConfig, load_config
from .model import HALF_PI, bimodal_distribution
from .observables import deficit, mutual_info, redundancy, resolve_method
from .validation import run_validation

EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG = 0, 1, 2


def fmt(x) -> str:
    """17 significant digits, enough to round-trip a double."""
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".17g")


def _method_label(m: str) -> str:
    return m.replace("_", "-")


def _run_parallel(fn, items, threads: int) -> list:
    if threads == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_mutual_info(cfg: SweepConfig) -> str:
    model = cfg.model()
    h = model.env.haziness
    points = sorted((t, k) for t in cfg.times(default="0:pi/2:11") for k in cfg.fragments())

    def work(point):
        t, k = point
        try:
            m = resolve_method(cfg.method, t, model)
            return [fmt(t), k, cfg.n_env, fmt(h), _method_label(m), fmt(mutual_info(t, k, model, m))]
        except Exception as exc:  # row-level marker, the sweep continues
            return [fmt(t), k, cfg.n_env, fmt(h), _method_label(cfg.method), f"error: {exc}"]

    rows = _run_parallel(work, points, cfg.threads)
    return _csv_text(["t", "n_frag", "n_env", "haziness", "method", "I_bits"], rows)


def cmd_redundancy(cfg: SweepConfig) -> str:
    points = sorted((h, t) for h in cfg.hazinesses() for t in cfg.times())

    def work(point):
        h, t = point
        try:
            res = redundancy(cfg.delta, t, cfg.model(h), cfg.method)
            return [fmt(h), fmt(cfg.delta), fmt(t), fmt(res.n_frag_delta), fmt(res.redundancy)]
        except Exception as exc:
            return [fmt(h), fmt(cfg.delta), fmt(t), f"error: {exc}", ""]

    rows = _run_parallel(work, points, cfg.threads)
    return _csv_text(["haziness", "delta", "t", "n_frag_delta", "redundancy"], rows)


def _overlap_and_deficit(cfg: SweepConfig, h=None):
    model = cfg.model(h)
    if cfg.n_frag > cfg.n_env:
        raise ConfigError(f"field 'n_frag': {cfg.n_frag} exceeds n_env={cfg.n_env}")
    p_l, p_r, overlap = bimodal_distribution(cfg.n_frag, model.system, model.env)
    info = mutual_info(HALF_PI, cfg.n_frag, model, cfg.method)
    return p_l, p_r, overlap, deficit(info, model.system)


def cmd_bimodal(cfg: SweepConfig) -> str:
    """Record distributions at t = pi/2, or (overlap, deficit) over an h grid."""
    if cfg.h_grid is not None:
        rows = []
        for h in cfg.hazinesses():
            _, _, overlap, dlt = _overlap_and_deficit(cfg, h)
            rows.append([fmt(h), fmt(overlap), fmt(dlt)])
        rows.sort(key=lambda r: (float(r[1]), float(r[0])))
        return _csv_text(["haziness", "overlap", "deficit"], rows)
    p_l, p_r, overlap, dlt = _overlap_and_deficit(cfg)
    rows = [[n, fmt(a), fmt(b)] for n, (a, b) in enumerate(zip(p_l, p_r))]
    rows.append(["summary", fmt(overlap), fmt(dlt)])
    return _csv_text(["n", "P_L", "P_R"], rows)


def cmd_validate(fault: bool = False):
    results = run_validation(fault=fault)
    rows = [[r.name, fmt(r.max_abs_deviation), fmt(r.tolerance), str(r.passed).lower()] for r in results]
    text = _csv_text(["check", "max_abs_deviation", "tolerance", "pass"], rows)
    return text, results


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hazyqd", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--n-env", type=int)
    common.add_argument("--s00", type=float)
    common.add_argument("--s01-re", type=float)
    common.add_argument("--s01-im", type=float)
    common.add_argument("--r00", type=float)
    env = common.add_mutually_exclusive_group()
    env.add_argument("--r01", type=float)
    env.add_argument("--haziness", type=float)
    common.add_argument("--t-grid", help="start:stop:count, a comma list, or one value; pi/2 etc. allowed")
    common.add_argument("--frag-grid", help="'all' or a list like 1,2,10-20")
    common.add_argument("--h-grid", help="haziness grid (redundancy, bimodal)")
    common.add_argument("--n-frag", type=int, help="fragment size for bimodal (default 50)")
    common.add_argument("--delta", type=float)
    common.add_argument("--method", choices=["auto", "schur", "closed-form", "oracle"])
    common.add_argument("--threads", type=int)
    common.add_argument("--output", help="write CSV here instead of stdout")

    sub.add_parser("mutual-info", parents=[common], help="I(S:F) over a (t, n_frag) grid")
    sub.add_parser("redundancy", parents=[common], help="redundancy over a haziness grid")
    sub.add_parser("bimodal", parents=[common], help="record distributions and peak overlap")
    val = sub.add_parser("validate", help="cross-method consistency checks")
    val.add_argument("--inject-fault", action="store_true", help="corrupt one path to test the harness")
    val.add_argument("--output")
    return parser


_CONFIG_KEYS = (
    "n_env", "s00", "s01_re", "s01_im", "r00", "r01", "haziness", "t_grid",
    "frag_grid", "h_grid", "n_frag", "delta", "method", "threads", "output",
)


def _emit(text: str, path) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        text, results = cmd_validate(args.inject_fault)
        _emit(text, args.output)
        failed = [r.name for r in results if not r.passed]
        summary = f"{len(results) - len(failed)}/{len(results)} checks passed"
        print(summary + (f"; failed: {', '.join(failed)}" if failed else ""), file=sys.stderr)
        return EXIT_VALIDATION if failed else EXIT_OK
    try:
        overrides = {k: getattr(args, k) for k in _CONFIG_KEYS}
        cfg = load_config(args.config, **overrides)
        command = {"mutual-info": cmd_mutual_info, "redundancy": cmd_redundancy, "bimodal": cmd_bimodal}
        text = command[args.command](cfg)
    except (ValueError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    _emit(text, cfg.output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
