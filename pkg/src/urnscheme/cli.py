"""Command line entry point: ``urnscheme {analyze,simulate,survival,montecarlo}``.

Exit status is 0 on success, 2 for configuration or usage errors and 1 for
failures while running.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .asymptotics import classify
from .config import ConfigError, load_config
from .montecarlo import run_batch
from .survival import solve, survival_table
from .svg import emit_trajectory_svg
from .urn import simulate_trajectory

log = logging.getLogger("urnscheme")


class UsageError(ValueError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _write_or_print(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def parse_t_range(s: str) -> tuple[int, int]:
    try:
        a, b = s.split(":")
        return int(a), int(b)
    except ValueError:
        raise UsageError(f"--t-range expects t1:t2, got {s!r}") from None


def parse_table_spec(s: str) -> tuple[list[int], list[Fraction]]:
    """``t0s=6,12,18:p0s=1/3,1/2,2/3`` -> ([6, 12, 18], [1/3, 1/2, 2/3])."""
    parts = dict(chunk.split("=", 1) for chunk in s.split(":") if "=" in chunk)
    if set(parts) != {"t0s", "p0s"}:
        raise UsageError(f"--table expects t0s=...:p0s=..., got {s!r}")
    try:
        t0s = [int(x) for x in parts["t0s"].split(",") if x]
        p0s = [Fraction(x) for x in parts["p0s"].split(",") if x]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"could not parse --table {s!r}") from None
    return t0s, p0s


def cmd_analyze(args, cfg) -> None:
    report = classify(cfg.to_scheme())
    _write_or_print(_dump(report.to_json()), args.out)


def _csv_path(base: Path, i: int, n: int) -> Path:
    if n == 1:
        return base
    return base.with_name(f"{base.stem}_{i:03d}{base.suffix}")


def cmd_simulate(args, cfg) -> None:
    scheme = cfg.to_scheme()
    trajs = [
        simulate_trajectory(scheme, args.steps, args.seed ^ i)
        for i in range(args.trajectories)
    ]
    external = [t.relabeled() for t in trajs]
    if args.out_csv:
        base = Path(args.out_csv)
        for i, t in enumerate(external):
            _csv_path(base, i, len(external)).write_text(t.to_csv(), encoding="utf-8")
    if args.out_svg:
        report = classify(scheme)
        limits = report.limit_points
        if scheme.swapped:
            limits = tuple(1.0 - x for x in limits)
        emit_trajectory_svg(external, limits, args.out_svg)
    summary = {
        "steps": args.steps,
        "seed": args.seed,
        "trajectories": [
            {
                "index": i,
                "seed": t.seed,
                "tau": t.tau,
                "tauKind": None if t.tau_kind is None else t.tau_kind.value,
                "finalP": float(t.valid_p()[-1]),
            }
            for i, t in enumerate(external)
        ],
    }
    sys.stdout.write(_dump(summary))


def cmd_survival(args, cfg) -> None:
    scheme = cfg.to_scheme()
    if args.table:
        t0s, p0s = parse_table_spec(args.table)
        try:
            table = survival_table(scheme, args.horizon, t0s, p0s)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        _write_or_print(table.to_csv(), args.out)
        log.info("\n%s", table.format())
        return
    if not args.t_range:
        raise UsageError("survival needs --t-range or --table")
    t1, t2 = parse_t_range(args.t_range)
    grid = solve(scheme, args.horizon, (t1, t2))
    lines = ["t0,alpha0,p0,q0"]
    for t, alpha, q in grid.items():
        a_ext = scheme.to_external_alpha(t, alpha)
        p0 = Fraction(a_ext, t)
        lines.append(f"{t},{a_ext},{p0.numerator}/{p0.denominator},{q!r}")
    # rows sorted by (t0, alpha0) in the user's colour labels
    body = sorted(lines[1:], key=lambda r: tuple(int(x) for x in r.split(",")[:2]))
    _write_or_print("\n".join([lines[0], *body]) + "\n", args.out)


def cmd_montecarlo(args, cfg) -> None:
    scheme = cfg.to_scheme()
    stats = run_batch(scheme, args.trajectories, args.steps, args.seed, workers=args.workers)
    out = stats.to_json()
    if scheme.swapped:
        out["colorsSwapped"] = True
    _write_or_print(_dump(out), args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="urnscheme", description="Unbalanced Polya urn schemes with random replacements"
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="scheme JSON file")
        return p

    p = common(sub.add_parser("analyze", help="classify the asymptotic regime"))
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_analyze)

    p = common(sub.add_parser("simulate", help="simulate trajectories"))
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trajectories", type=int, default=1)
    p.add_argument("--out-csv", help="CSV path; several trajectories get _NNN suffixes")
    p.add_argument("--out-svg", help="SVG plot path")
    p.set_defaults(func=cmd_simulate)

    p = common(sub.add_parser("survival", help="exact P{tau > M} by backward induction"))
    p.add_argument("--horizon", type=int, required=True, help="number of extractions M")
    p.add_argument("--t-range", help="t1:t2 range of initial totals")
    p.add_argument("--table", help="t0s=6,12,...:p0s=1/3,1/2,...")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_survival)

    p = common(sub.add_parser("montecarlo", help="batch statistics over seeded trajectories"))
    p.add_argument("--trajectories", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_montecarlo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return 2
    try:
        args.func(args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        log.debug("failure", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
