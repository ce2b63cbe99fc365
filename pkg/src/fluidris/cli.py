"""Command-line experiment runner.

Verbs:
    run <config>            produce all artifact files for one scenario
    compare <config...>     aligned FRIS/RIS comparison CSV
    golden-check <csv...>   verify implementations against golden vectors

Exit codes: 0 success, 1 golden mismatch, 2 configuration error,
3 numerical-conditioning abort.
"""

import argparse
import sys
from dataclasses import replace
from importlib import resources
from pathlib import Path

from fluidris.errors import ConditioningError, ConfigurationError
from fluidris.golden import check_golden_file
from fluidris.montecarlo import McConfig
from fluidris.scenario import compare_scenarios, load_scenario, run_scenario


def _resolve_config(name: str) -> Path:
    """Accept a filesystem path or the bare name of a bundled config."""
    p = Path(name)
    if p.is_file():
        return p
    bundled = resources.files("fluidris") / "configs" / f"{name}.toml"
    with resources.as_file(bundled) as fp:
        if fp.is_file():
            return fp
    raise ConfigurationError(f"config not found: {name!r} (no such file or bundled scenario)")


def _parse_snr_range(text: str) -> tuple:
    try:
        lo, hi, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise ConfigurationError(f"--snr-db-range expects lo:hi:step, got {text!r}") from None
    if step <= 0 or hi < lo:
        raise ConfigurationError("--snr-db-range needs step > 0 and hi >= lo")
    grid = []
    x = lo
    while x <= hi + 1e-9:
        grid.append(round(x, 9))
        x += step
    return tuple(grid)


def _apply_overrides(sc, args):
    if args.trials is not None:
        if args.trials == 0:
            sc = replace(sc, mc=None)
        else:
            base = sc.mc if sc.mc is not None else McConfig()
            sc = replace(sc, mc=replace(base, trials=args.trials))
    if args.seed is not None:
        base = sc.mc if sc.mc is not None else McConfig()
        sc = replace(sc, mc=replace(base, seed=args.seed))
    if args.snr_db_range is not None:
        sc = replace(sc, snr_db=_parse_snr_range(args.snr_db_range))
    return sc


def _cmd_run(args) -> int:
    sc = _apply_overrides(load_scenario(_resolve_config(args.config)), args)
    files = run_scenario(sc, args.out)
    for key in sorted(files):
        print(f"{key}: {files[key]}")
    return 0


def _cmd_compare(args) -> int:
    scenarios = [_apply_overrides(load_scenario(_resolve_config(c)), args) for c in args.configs]
    out = Path(args.out) / "compare.csv"
    path = compare_scenarios(scenarios, out)
    print(f"compare_csv: {path}")
    return 0


def _cmd_golden(args) -> int:
    failed = False
    for path in args.vectors:
        for res in check_golden_file(path):
            status = "ok" if res.ok else "FAIL"
            print(
                f"{Path(path).name}: {res.function:<16} n={res.checked:<4} "
                f"max_rel={res.max_rel_err:.3e} tol={res.tolerance:.0e} {status}"
            )
            failed = failed or not res.ok
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fluidris", description=__doc__)
    sub = ap.add_subparsers(dest="verb", required=True)

    run = sub.add_parser("run", help="run one scenario config")
    run.add_argument("config")
    compare = sub.add_parser("compare", help="compare two or more scenario configs")
    compare.add_argument("configs", nargs="+")
    for p in (run, compare):
        p.add_argument("--trials", type=int, default=None, help="override MC trials (0 disables MC)")
        p.add_argument("--seed", type=int, default=None, help="override MC seed")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--snr-db-range", default=None, help="lo:hi:step sweep override")

    golden = sub.add_parser("golden-check", help="verify golden vector files")
    golden.add_argument("vectors", nargs="+")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.verb == "run":
            return _cmd_run(args)
        if args.verb == "compare":
            return _cmd_compare(args)
        return _cmd_golden(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except ConditioningError as exc:
        print(f"conditioning abort: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
