"""Command line: ``nisv list | run | sweep | all``.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on
configuration errors (bad flags, unknown ids, invalid parameters, bad config).
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .checks import SWEEP_AXES, CheckError, get_check, list_checks, run_check, sweep
from .config import Config, load_config
from .errors import ConfigError
from .report import FORMATS, emit_report, sort_reports

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

_TOL_KEYS = {
    "exact": "tol_exact",
    "algebraic": "tol_algebraic",
    "finite": "tol_finite",
    "infinite": "tol_infinite",
    "contain": "tol_contain",
    "floor": "negative_floor",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value config file (default: $NISV_CONFIG)")
    p.add_argument("--order", type=int)
    p.add_argument("--lambda-samples", type=int, dest="lambda_samples")
    p.add_argument("--delta", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument(
        "--tol",
        action="append",
        default=[],
        help="NAME=VALUE with NAME in exact, algebraic, finite, infinite, contain, floor; "
        "a bare VALUE sets the tolerance of the check's own regime",
    )
    p.add_argument("--out", help="write the report to this path")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--timing", action="store_true", help="record wall time in runtime_ms")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nisv", description="Numerical verifier for subspace identities in Hardy spaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("list", help="list registered checks")
    run = sub.add_parser("run", help="run one check")
    run.add_argument("id")
    run.add_argument("--param", action="append", default=[], help="check parameter NAME=VALUE")
    _common(run)
    sw = sub.add_parser("sweep", help="rerun a check along increasing orders or sample counts")
    sw.add_argument("id")
    sw.add_argument("--param", action="append", default=[])
    sw.add_argument("--axis", choices=SWEEP_AXES, required=True)
    sw.add_argument("--values", required=True, help="comma-separated increasing integers")
    _common(sw)
    al = sub.add_parser("all", help="run every registered check with default parameters")
    al.add_argument("--manifest", help="statement manifest; run the checks it names and verify coverage")
    al.add_argument("--jobs", type=int, default=1, help="worker processes")
    _common(al)
    return parser


def _pairs(items, what: str) -> dict:
    out = {}
    for item in items:
        if "=" not in item:
            raise ConfigError(f"{what} must be NAME=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _tolerances(items, regime: str | None) -> dict:
    out = {}
    for item in items:
        if "=" in item:
            name, value = (x.strip() for x in item.split("=", 1))
            if name not in _TOL_KEYS:
                raise ConfigError(f"unknown tolerance {name!r}; choose from {sorted(_TOL_KEYS)}")
            out[_TOL_KEYS[name]] = value
        elif regime in ("exact", "algebraic", "finite", "infinite"):
            out[_TOL_KEYS[regime]] = item
        else:
            raise ConfigError("a bare --tol needs a single-regime check; use NAME=VALUE")
    return out


def _config(args, regime: str | None = None) -> Config:
    overrides = dict(order=args.order, lambda_samples=args.lambda_samples, delta=args.delta, seed=args.seed)
    overrides.update(_tolerances(args.tol, regime))
    if args.timing:
        overrides["record_timing"] = True
    return load_config(args.config, **overrides)


def read_manifest(path) -> dict:
    """``statement: ID, ID`` lines; ``#`` starts a comment."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read manifest {path}: {exc}") from exc
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ConfigError(f"manifest line {lineno}: expected 'statement: ID, ID'")
        name, ids = line.split(":", 1)
        ids = [i.strip() for i in ids.split(",") if i.strip()]
        if not ids:
            raise ConfigError(f"manifest line {lineno}: no check ids")
        out[name.strip()] = ids
    return out


def missing_from_registry(manifest: dict) -> list:
    known = {s.id for s in list_checks()}
    return sorted({i for ids in manifest.values() for i in ids} - known)


def _run_one(job):
    check_id, cfg = job
    return run_check(check_id, None, cfg)


def _emit(reports, args) -> None:
    text = emit_report(reports, args.format, args.out)
    if args.out is None:
        sys.stdout.write(text)


def _exit_code(reports) -> int:
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "list":
            for s in list_checks():
                print(f"{s.id:<14} {s.regime:<10} {s.statement}")
            return EXIT_OK
        if args.command == "run":
            spec = get_check(args.id)
            cfg = _config(args, spec.regime)
            report = run_check(args.id, _pairs(args.param, "--param"), cfg)
            _emit([report], args)
            return _exit_code([report])
        if args.command == "sweep":
            spec = get_check(args.id)
            cfg = _config(args, spec.regime)
            try:
                values = [int(v) for v in args.values.split(",") if v.strip()]
            except ValueError as exc:
                raise ConfigError(f"--values must be integers: {args.values!r}") from exc
            res = sweep(args.id, _pairs(args.param, "--param"), args.axis, values, cfg)
            _emit(list(res.reports), args)
            seq = ", ".join(f"{float(r.defects.get(res.watched, float('nan'))):.3e}" for r in res.reports)
            verdict = "monotone" if res.monotone else "not monotone"
            print(f"{res.id} {res.axis} {list(res.values)}: {res.watched} = [{seq}] {verdict}", file=sys.stderr)
            return _exit_code(res.reports) if res.monotone else EXIT_FAIL
        if args.command == "all":
            cfg = _config(args)
            if args.manifest:
                manifest = read_manifest(args.manifest)
                missing = missing_from_registry(manifest)
                if missing:
                    raise ConfigError(f"manifest names unregistered checks: {missing}")
                ids = sorted({i for v in manifest.values() for i in v})
            else:
                ids = [s.id for s in list_checks()]
            jobs = [(i, cfg) for i in ids]
            if args.jobs > 1:
                with ProcessPoolExecutor(max_workers=min(args.jobs, os.cpu_count() or 1)) as pool:
                    reports = list(pool.map(_run_one, jobs))
            else:
                reports = [_run_one(j) for j in jobs]
            reports = sort_reports(reports)
            _emit(reports, args)
            return _exit_code(reports)
    except (ConfigError, CheckError) as exc:
        print(f"nisv: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"nisv: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
