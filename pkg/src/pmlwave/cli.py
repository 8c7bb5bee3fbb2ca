"""Command line entry point.

Verbs:
  run <config>                run a scenario, write probes/snapshots/manifest
  sweep <config> --vary K --values a,b,c   run variants concurrently
  validate                    run the verification suite, print pass/fail
  profile <config>            emit the sampled sigma/kappa arrays as CSV

Exit codes: 0 ok, 1 config error, 2 numerical instability, 3 failed validate.
The env var PMLW_OUT overrides the output root directory.
"""

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .errors import ConfigError, InstabilityError
from .scenario import output_root, parse_config, run_scenario


def _load_config(path):
    return parse_config(Path(path).read_text())


def _cmd_run(args):
    cfg = _load_config(args.config)
    out = Path(args.out) if args.out else None
    manifest = run_scenario(cfg, out_dir=out)
    print(f"wrote {len(manifest.outputs)} files "
          f"({manifest.n_steps} steps, dt={manifest.dt:.6g})")
    return 0


def _set_path(raw, dotted, value):
    node = raw
    parts = dotted.split(".")
    for part in parts[:-1]:
        if part.isdigit():
            node = node[int(part)]
        else:
            node = node.setdefault(part, {})
    last = parts[-1]
    if last.isdigit():
        node[int(last)] = value
    else:
        node[last] = value


def _sweep_worker(item):
    text, out_dir = item
    manifest = run_scenario(parse_config(text), out_dir=Path(out_dir))
    return out_dir, manifest.n_steps


def _cmd_sweep(args):
    raw_text = Path(args.config).read_text()
    values = [json.loads(v) for v in args.values.split(",")]
    jobs = []
    base_out = Path(args.out) if args.out else output_root() / "sweep"
    for value in values:
        raw = json.loads(raw_text)
        _set_path(raw, args.vary, value)
        text = json.dumps(raw)
        parse_config(text)  # fail fast on bad values
        jobs.append((text, str(base_out / f"{args.vary.replace('.', '_')}={value}")))
    with ProcessPoolExecutor(max_workers=args.workers) as pool:
        for out_dir, n_steps in pool.map(_sweep_worker, jobs):
            print(f"{out_dir}: {n_steps} steps")
    return 0


def _cmd_validate(args):
    from .verification import run_all

    names = args.criteria.split(",") if args.criteria else None
    results = run_all(names=names, progress=print)
    return 0 if all(r.passed for r in results) else 3


def _cmd_profile(args):
    cfg = _load_config(args.config)
    grid = cfg.grid.build()
    medium = cfg.medium.build(grid)
    from .pml import build_pml_maps

    coeffs = build_pml_maps(grid, cfg.absorbers, c_ref=medium.c_max(grid))
    coords = {"sigma_x_u": grid.x_centers(), "kappa_x_u": grid.x_centers(),
              "sigma_x_v": grid.x_faces(), "kappa_x_v": grid.x_faces()}
    if grid.dim == 2:
        coords.update({"sigma_y_u": grid.y_centers(), "kappa_y_u": grid.y_centers(),
                       "sigma_y_v": grid.y_faces(), "kappa_y_v": grid.y_faces()})
    lines = ["array,location_index,coordinate,value"]
    for name, arr in coeffs.arrays():
        for i, (c, v) in enumerate(zip(coords[name], arr)):
            lines.append(f"{name},{i},{c:.17g},{v:.17g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(prog="pmlwave", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="verb", required=True)

    p_run = sub.add_parser("run", help="run one scenario")
    p_run.add_argument("config")
    p_run.add_argument("--out", default=None, help="output directory override")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run variants of a scenario")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--vary", required=True, help="dotted config path, e.g. grid.resolution")
    p_sweep.add_argument("--values", required=True, help="comma-separated JSON values")
    p_sweep.add_argument("--workers", type=int, default=2)
    p_sweep.add_argument("--out", default=None)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_val = sub.add_parser("validate", help="run the verification suite")
    p_val.add_argument("--criteria", default=None, help="comma-separated subset")
    p_val.set_defaults(func=_cmd_validate)

    p_prof = sub.add_parser("profile", help="emit sampled sigma/kappa arrays")
    p_prof.add_argument("config")
    p_prof.add_argument("--out", default=None)
    p_prof.set_defaults(func=_cmd_profile)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except InstabilityError as exc:
        print(f"instability: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
