"""Command-line driver.

Commands:
    orbit   -- sample the orbit of the base skew form, write orbit.json
    gauss   -- write a separable-Gaussian grid file (+ sidecar with factors)
    star    -- star product of two grid files, with optional oracle check
    verify  -- run a named verification suite, JSON report, exit 1 on failure
    sweep   -- semiclassical theta sweep to CSV

Exit codes: 0 pass, 1 check failure, 2 usage/format error.  All outputs are
deterministic for a fixed config + seed; runtimes go to stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from moyalorbit import gridio
from moyalorbit.geometry import orbit_invariants, sample_orbit
from moyalorbit.grids import GridSpec
from moyalorbit.oracle import GaussianFactor, SeparableGaussian, oracle_defect
from moyalorbit.star import relative_l2, semiclassical_sweep, star_product
from moyalorbit.suites import SUITE_NAMES, RunConfig, run_suite

USAGE_ERROR = 2
CHECK_FAILURE = 1


def _load_config(path: str | None) -> RunConfig:
    if path is None:
        return RunConfig()
    data = json.loads(Path(path).read_text())
    return RunConfig.from_dict(data)


def _dump_json(path: Path, data) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, sort_keys=True, indent=1) + "\n")


def cmd_orbit(args) -> int:
    cfg = _load_config(args.config)
    if args.seed is not None:
        cfg = RunConfig(**{**cfg.__dict__, "seed": args.seed})
    st = cfg.spacetime()
    pairs = sample_orbit(st, args.n, cfg.seed, cfg.base_form())
    records = []
    for t, s in pairs:
        records.append(
            {
                "transform": t.to_json(),
                "form": s.to_json(),
                "invariants": orbit_invariants(s, st).tolist(),
            }
        )
    out = Path(args.out) / "orbit.json"
    _dump_json(out, {"seed": cfg.seed, "records": records})
    print(out)
    return 0


def cmd_gauss(args) -> int:
    cfg = _load_config(args.config)
    spec = GridSpec(dim=2, n=cfg.n, length=cfg.length, theta=cfg.theta)
    factors = []
    for spec_str in args.factor:
        c, w, b = (float(v) for v in spec_str.split(","))
        factors.append(GaussianFactor(c, w, b))
    if len(factors) != 2:
        print("gauss requires exactly two --factor c,w,b options", file=sys.stderr)
        return USAGE_ERROR
    g = SeparableGaussian(tuple(factors))
    path = Path(args.out)
    gridio.write_grid(path, g.sample(spec), cfg.base_form() if cfg.dim == 2 else None)
    sidecar_path = path.with_suffix(path.suffix + ".json")
    sidecar = json.loads(sidecar_path.read_text())
    sidecar["gaussian"] = [[f.center, f.width, f.freq] for f in factors]
    sidecar_path.write_text(json.dumps(sidecar, sort_keys=True, indent=1) + "\n")
    print(path)
    return 0


def _read_gaussian(path: Path) -> SeparableGaussian | None:
    sidecar = path.with_suffix(path.suffix + ".json")
    if not sidecar.exists():
        return None
    data = json.loads(sidecar.read_text())
    if "gaussian" not in data:
        return None
    return SeparableGaussian(
        tuple(GaussianFactor(c, w, b) for c, w, b in data["gaussian"])
    )


def cmd_star(args) -> int:
    cfg = _load_config(args.config)
    try:
        f, sigma_f = gridio.read_grid(args.f_file)
        g, _ = gridio.read_grid(args.g_file)
    except (gridio.FormatError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if f.spec != g.spec:
        print("error: grid headers do not match", file=sys.stderr)
        return USAGE_ERROR
    sigma = sigma_f if sigma_f is not None else cfg.base_form()
    if sigma.dim != f.spec.dim:
        print("error: skew form dimension does not match grids", file=sys.stderr)
        return USAGE_ERROR
    t0 = time.perf_counter()
    result = star_product(f, g, sigma)
    elapsed = time.perf_counter() - t0
    print(f"star product took {elapsed:.3f}s", file=sys.stderr)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    grid_path = out_dir / "star.moya"
    gridio.write_grid(grid_path, result, sigma)
    summary = {"l2_norm": result.norm2(), "max_abs": result.max_abs()}
    if not np.any(sigma.matrix):
        summary["pointwise_defect"] = relative_l2(result, f * g)
    if args.oracle:
        fg = _read_gaussian(Path(args.f_file))
        gg = _read_gaussian(Path(args.g_file))
        if fg is None or gg is None or f.spec.dim != 2:
            print(
                "error: --oracle needs d=2 Gaussian inputs written by `gauss`",
                file=sys.stderr,
            )
            return USAGE_ERROR
        summary["oracle_defect"] = oracle_defect(result, fg, gg, sigma)
    _dump_json(out_dir / "star_summary.json", summary)
    print(grid_path)
    return 0


def cmd_verify(args) -> int:
    cfg = _load_config(args.config)
    if args.seed is not None:
        cfg = RunConfig(**{**cfg.__dict__, "seed": args.seed})
    if args.suite not in SUITE_NAMES + ("all",):
        print(f"error: unknown suite {args.suite!r}", file=sys.stderr)
        return USAGE_ERROR
    report = run_suite(args.suite, cfg)
    out = Path(args.out) / f"verify_{args.suite}.json"
    _dump_json(out, report)
    print(json.dumps(report, sort_keys=True, indent=1))
    return 0 if report["pass"] else CHECK_FAILURE


def cmd_sweep(args) -> int:
    cfg = _load_config(args.config)
    try:
        thetas = [float(t) for t in args.theta.split(",")]
    except ValueError:
        print("error: --theta must be a comma-separated float list", file=sys.stderr)
        return USAGE_ERROR
    spec = GridSpec(dim=2, n=cfg.n, length=cfg.length, theta=1.0)
    f = SeparableGaussian(
        (GaussianFactor(0.5, 1.2), GaussianFactor(0.0, 1.3))
    ).sample(spec)
    g = SeparableGaussian(
        (GaussianFactor(-0.4, 1.1), GaussianFactor(0.3, 1.2))
    ).sample(spec)
    from moyalorbit.suites import _plane_form

    result = semiclassical_sweep(f, g, _plane_form(), thetas)
    out = Path(args.out) / "sweep.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    lines = ["theta,d1,d2,slope_d1,slope_d2"]
    for row in result["rows"]:
        lines.append(
            f"{row['theta']!r},{row['d1']!r},{row['d2']!r},"
            f"{result['slope_d1']!r},{result['slope_d2']!r}"
        )
    out.write_text("\n".join(lines) + "\n")
    print(out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moyalorbit",
        description="Deformed products over a Lorentz orbit of skew forms",
    )
    parser.add_argument("--config", default=None, help="JSON config file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbit", help="sample the orbit, write orbit.json")
    p.add_argument("-n", type=int, default=10)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=".")
    p.set_defaults(fn=cmd_orbit)

    p = sub.add_parser("gauss", help="write a separable-Gaussian grid file")
    p.add_argument("--factor", action="append", required=True, metavar="c,w,b")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_gauss)

    p = sub.add_parser("star", help="star product of two grid files")
    p.add_argument("f_file")
    p.add_argument("g_file")
    p.add_argument("--out", default=".")
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(fn=cmd_star)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=".")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("sweep", help="semiclassical theta sweep to CSV")
    p.add_argument("--theta", required=True, help="comma-separated decreasing list")
    p.add_argument("--out", default=".")
    p.set_defaults(fn=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
