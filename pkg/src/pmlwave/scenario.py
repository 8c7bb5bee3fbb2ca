"""Scenario configuration, execution, and data export.

A scenario is a complete runnable description: grid, medium, absorbers,
sources, probes, run control, and outputs.  Configs are strict JSON: any
key outside the schema is an error, so a typo in an absorber parameter
cannot silently change a run.  Identical configs produce bit-identical
outputs on the same platform.
"""

import dataclasses
import hashlib
import json
import os
import struct
import time
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import __version__
from .errors import (InstabilityError, InvariantError, MissingFieldError,
                     UnknownKeyError)
from .fields import FieldState
from .grid import HARD_WALL, build_grid, cfl_dt
from .medium import Medium
from .pml import NONPML_SCALAR, PML, AbsorberSide, PmlSpec, build_pml_maps
from .probes import (DftProbe, DftRecorder, LineProfileProbe,
                     LineProfileRecorder, TimeSeriesProbe, TimeSeriesRecorder,
                     make_recorder, validate_probe_in_bounds)
from .sources import (ContinuousWave, GaussianPulse, LineSource, PointSource,
                      apply_source, validate_source_clear_of_absorbers,
                      waveguide_mode)
from .stepping import step_nonpml_absorber, step_plain, step_pml

SNAP_FORMATS = ("none", "csv", "raw")


# -- configuration dataclasses ----------------------------------------------

@dataclass(frozen=True)
class GridConfig:
    dim: int
    extent: tuple
    resolution: float
    boundary_y: str = HARD_WALL
    x_min: float = 0.0    # internal: analysis may shift the domain; not in JSON

    def build(self):
        extent = self.extent if self.dim == 2 else self.extent[0]
        return build_grid(extent, self.resolution, boundary_y=self.boundary_y,
                          x_min=self.x_min)


@dataclass(frozen=True)
class MediumConfig:
    kind: str = "uniform"
    a: float = 1.0
    b: float = 1.0
    background: tuple | None = None        # (a, b)
    core: tuple | None = None              # (a, b)
    core_y_span: tuple | None = None
    rectangles: tuple = ()                 # ((a, b, (x0, x1), (y0, y1)|None), ...)

    def build(self, grid):
        if self.kind == "uniform":
            return Medium.uniform(grid, self.a, self.b)
        if self.kind == "waveguide":
            return Medium.waveguide(grid, self.background[0], self.background[1],
                                    self.core[0], self.core[1], self.core_y_span)
        if self.kind == "rectangles":
            return Medium.rectangles(grid, self.background, self.rectangles)
        raise InvariantError(f"unknown medium kind {self.kind!r}")


@dataclass(frozen=True)
class SourceConfig:
    kind: str                         # point_additive | line_additive
    waveform: object                  # GaussianPulse | ContinuousWave
    amplitude: float = 1.0
    position: tuple | None = None     # point sources
    x: float | None = None            # line sources
    phase_ky: float = 0.0
    profile: str = "uniform"          # uniform | waveguide_mode

    def build(self, grid, medium):
        if self.kind == "point_additive":
            return PointSource(self.position, self.waveform, self.amplitude)
        profile = None
        if self.profile == "waveguide_mode":
            profile, _ = waveguide_mode(grid, medium, self.waveform.omega)
        return LineSource(self.x, self.waveform, self.amplitude,
                          self.phase_ky, profile)


@dataclass(frozen=True)
class RunConfig:
    duration: float | None = None
    duration_periods: float | None = None
    cfl_safety: float = 0.5
    check_every: int = 100
    snapshot_stride: int = 0


@dataclass(frozen=True)
class OutputConfig:
    directory: str = "out"
    snapshots: str = "none"


@dataclass(frozen=True)
class ScenarioConfig:
    grid: GridConfig
    sources: tuple
    probes: tuple = ()
    medium: MediumConfig = MediumConfig()
    absorbers: PmlSpec = PmlSpec()
    run: RunConfig = RunConfig()
    outputs: OutputConfig = OutputConfig()


# -- strict JSON parsing -----------------------------------------------------

def _check_keys(block, allowed, required, ctx):
    for key in block:
        if key not in allowed:
            raise UnknownKeyError(f"unknown config key {key!r} in {ctx}")
    for key in required:
        if key not in block:
            raise MissingFieldError(f"missing required key {key!r} in {ctx}")


def _pair(x, ctx):
    if not isinstance(x, (list, tuple)) or len(x) != 2:
        raise InvariantError(f"{ctx} must be a pair")
    return (float(x[0]), float(x[1]))


def _parse_grid(block):
    _check_keys(block, {"dim", "extent", "resolution", "boundary_y"},
                {"dim", "extent", "resolution"}, "grid")
    dim = int(block["dim"])
    extent = block["extent"]
    extent = tuple(float(e) for e in (extent if isinstance(extent, (list, tuple)) else [extent]))
    if len(extent) != dim:
        raise InvariantError(f"grid.extent has {len(extent)} entries for dim={dim}")
    return GridConfig(dim=dim, extent=extent, resolution=float(block["resolution"]),
                      boundary_y=block.get("boundary_y", HARD_WALL))


def _parse_medium(block):
    _check_keys(block, {"kind", "a", "b", "background", "core", "core_y_span",
                        "rectangles"}, {"kind"}, "medium")
    kind = block["kind"]
    if kind == "uniform":
        return MediumConfig(kind="uniform", a=float(block.get("a", 1.0)),
                            b=float(block.get("b", 1.0)))
    if kind == "waveguide":
        for key in ("background", "core", "core_y_span"):
            if key not in block:
                raise MissingFieldError(f"missing required key {key!r} in medium")
        return MediumConfig(kind="waveguide",
                            background=_pair(block["background"], "medium.background"),
                            core=_pair(block["core"], "medium.core"),
                            core_y_span=_pair(block["core_y_span"], "medium.core_y_span"))
    if kind == "rectangles":
        rects = []
        for i, r in enumerate(block.get("rectangles", [])):
            _check_keys(r, {"a", "b", "x_span", "y_span"}, {"a", "b", "x_span"},
                        f"medium.rectangles[{i}]")
            rects.append((float(r["a"]), float(r["b"]),
                          _pair(r["x_span"], "x_span"),
                          _pair(r["y_span"], "y_span") if "y_span" in r else None))
        if "background" not in block:
            raise MissingFieldError("missing required key 'background' in medium")
        return MediumConfig(kind="rectangles",
                            background=_pair(block["background"], "medium.background"),
                            rectangles=tuple(rects))
    raise InvariantError(f"unknown medium kind {kind!r}")


def _parse_side(block, ctx):
    _check_keys(block, {"mode", "thickness", "degree", "sigma_max", "r_target",
                        "kappa_max"}, {"thickness"}, ctx)
    if "sigma_max" in block and "r_target" in block:
        raise InvariantError(f"{ctx}: give sigma_max or r_target, not both")
    return AbsorberSide(
        thickness=float(block["thickness"]),
        degree=int(block.get("degree", 2)),
        sigma_max=float(block["sigma_max"]) if "sigma_max" in block else None,
        r_target=float(block["r_target"]) if "r_target" in block else None,
        kappa_max=float(block.get("kappa_max", 1.0)),
        mode=block.get("mode", PML),
    )


def _parse_absorbers(block):
    _check_keys(block, {"x_lo", "x_hi", "y_lo", "y_hi"}, (), "absorbers")
    sides = {name: _parse_side(side, f"absorbers.{name}")
             for name, side in block.items()}
    return PmlSpec(**sides)


def _parse_waveform(block, ctx):
    _check_keys(block, {"kind", "omega0", "tau", "delay", "omega", "ramp_time"},
                {"kind"}, ctx)
    kind = block["kind"]
    if kind == "gaussian_pulse":
        _check_keys(block, {"kind", "omega0", "tau", "delay"}, {"omega0", "tau"}, ctx)
        return GaussianPulse(omega0=float(block["omega0"]), tau=float(block["tau"]),
                             delay=float(block.get("delay", 0.0)))
    if kind == "continuous_wave":
        _check_keys(block, {"kind", "omega", "ramp_time"}, {"omega"}, ctx)
        return ContinuousWave(omega=float(block["omega"]),
                              ramp_time=float(block.get("ramp_time", 0.0)))
    raise InvariantError(f"{ctx}: unknown waveform kind {kind!r}")


def _parse_source(block, i):
    ctx = f"sources[{i}]"
    _check_keys(block, {"kind", "waveform", "amplitude", "position", "x",
                        "phase_ky", "profile"}, {"kind", "waveform"}, ctx)
    kind = block["kind"]
    waveform = _parse_waveform(block["waveform"], f"{ctx}.waveform")
    amplitude = float(block.get("amplitude", 1.0))
    if kind == "point_additive":
        if "position" not in block:
            raise MissingFieldError(f"missing required key 'position' in {ctx}")
        pos = block["position"]
        pos = tuple(float(p) for p in (pos if isinstance(pos, (list, tuple)) else [pos]))
        return SourceConfig(kind=kind, waveform=waveform, amplitude=amplitude,
                            position=pos)
    if kind == "line_additive":
        if "x" not in block:
            raise MissingFieldError(f"missing required key 'x' in {ctx}")
        return SourceConfig(kind=kind, waveform=waveform, amplitude=amplitude,
                            x=float(block["x"]),
                            phase_ky=float(block.get("phase_ky", 0.0)),
                            profile=block.get("profile", "uniform"))
    raise InvariantError(f"{ctx}: unknown source kind {kind!r}")


def _parse_probe(block, i):
    ctx = f"probes[{i}]"
    _check_keys(block, {"kind", "name", "position", "axis", "span", "at",
                        "stride", "omegas", "t_start"}, {"kind", "name"}, ctx)
    kind = block["kind"]
    name = block["name"]

    def pos():
        p = block["position"]
        return tuple(float(v) for v in (p if isinstance(p, (list, tuple)) else [p]))

    if kind == "time_series":
        _check_keys(block, {"kind", "name", "position"}, {"position"}, ctx)
        return TimeSeriesProbe(name=name, position=pos())
    if kind == "line_profile":
        _check_keys(block, {"kind", "name", "axis", "span", "at", "stride"},
                    {"axis", "span"}, ctx)
        return LineProfileProbe(name=name, axis=block["axis"],
                                span=_pair(block["span"], f"{ctx}.span"),
                                at=float(block["at"]) if "at" in block else None,
                                stride=int(block.get("stride", 1)))
    if kind == "dft":
        omegas = tuple(float(w) for w in block["omegas"]) if "omegas" in block else ()
        if not omegas:
            raise MissingFieldError(f"missing required key 'omegas' in {ctx}")
        if "position" in block:
            return DftProbe(name=name, omegas=omegas, position=pos(),
                            t_start=float(block.get("t_start", 0.0)))
        return DftProbe(name=name, omegas=omegas, axis=block.get("axis"),
                        span=_pair(block["span"], f"{ctx}.span") if "span" in block else None,
                        at=float(block["at"]) if "at" in block else None,
                        stride=int(block.get("stride", 1)),
                        t_start=float(block.get("t_start", 0.0)))
    raise InvariantError(f"{ctx}: unknown probe kind {kind!r}")


def _parse_run(block):
    _check_keys(block, {"duration", "duration_periods", "cfl_safety",
                        "check_every", "snapshot_stride"}, (), "run")
    if "duration" in block and "duration_periods" in block:
        raise InvariantError("run: give duration or duration_periods, not both")
    safety = float(block.get("cfl_safety", 0.5))
    if not 0.0 < safety <= 1.0:
        raise InvariantError("run.cfl_safety must lie in (0, 1]")
    return RunConfig(
        duration=float(block["duration"]) if "duration" in block else None,
        duration_periods=float(block["duration_periods"]) if "duration_periods" in block else None,
        cfl_safety=safety,
        check_every=int(block.get("check_every", 100)),
        snapshot_stride=int(block.get("snapshot_stride", 0)),
    )


def _parse_outputs(block):
    _check_keys(block, {"directory", "snapshots"}, (), "outputs")
    snapshots = block.get("snapshots", "none")
    if snapshots not in SNAP_FORMATS:
        raise InvariantError(f"outputs.snapshots must be one of {SNAP_FORMATS}")
    return OutputConfig(directory=block.get("directory", "out"), snapshots=snapshots)


def parse_config(text):
    """Parse and validate a scenario from JSON text, applying defaults.

    Defaults: cfl_safety 0.5, absorber degree 2, r_target 1e-6, kappa_max 1,
    boundary_y hard_wall, uniform a=b=1 medium, duration 10 source periods.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvariantError(f"config is not valid JSON: {exc}") from exc
    _check_keys(raw, {"grid", "medium", "absorbers", "sources", "probes",
                      "run", "outputs"}, {"grid", "sources"}, "top level")
    cfg = ScenarioConfig(
        grid=_parse_grid(raw["grid"]),
        medium=_parse_medium(raw.get("medium", {"kind": "uniform"})),
        absorbers=_parse_absorbers(raw.get("absorbers", {})),
        sources=tuple(_parse_source(s, i) for i, s in enumerate(raw["sources"])),
        probes=tuple(_parse_probe(p, i) for i, p in enumerate(raw.get("probes", []))),
        run=_parse_run(raw.get("run", {})),
        outputs=_parse_outputs(raw.get("outputs", {})),
    )
    validate_config(cfg)
    return cfg


def validate_config(cfg):
    """Cross-field invariants that need the actual grid."""
    try:
        grid = cfg.grid.build()
        medium = cfg.medium.build(grid)
        build_pml_maps(grid, cfg.absorbers, c_ref=medium.c_max(grid))
    except ValueError as exc:
        raise InvariantError(str(exc)) from exc
    if not cfg.sources:
        raise InvariantError("at least one source is required")
    for src in cfg.sources:
        runtime = src.build(grid, medium)
        try:
            validate_source_clear_of_absorbers(runtime, grid, cfg.absorbers)
        except ValueError as exc:
            raise InvariantError(str(exc)) from exc
        if src.kind == "point_additive" and len(src.position) != grid.dim:
            raise InvariantError("source position does not match grid dimension")
    names = [p.name for p in cfg.probes]
    if len(set(names)) != len(names):
        raise InvariantError("probe names must be unique")
    for probe in cfg.probes:
        try:
            validate_probe_in_bounds(probe, grid)
        except ValueError as exc:
            raise InvariantError(str(exc)) from exc


# -- serialization -----------------------------------------------------------

def _waveform_dict(w):
    if isinstance(w, GaussianPulse):
        return {"kind": "gaussian_pulse", "omega0": w.omega0, "tau": w.tau,
                "delay": w.delay}
    return {"kind": "continuous_wave", "omega": w.omega, "ramp_time": w.ramp_time}


def _side_dict(side):
    out = {"mode": side.mode, "thickness": side.thickness, "degree": side.degree,
           "kappa_max": side.kappa_max}
    if side.sigma_max is not None:
        out["sigma_max"] = side.sigma_max
    else:
        out["r_target"] = side.r_target if side.r_target is not None else 1e-6
    return out


def _probe_dict(p):
    if isinstance(p, TimeSeriesProbe):
        return {"kind": "time_series", "name": p.name, "position": list(p.position)}
    if isinstance(p, LineProfileProbe):
        out = {"kind": "line_profile", "name": p.name, "axis": p.axis,
               "span": list(p.span), "stride": p.stride}
        if p.at is not None:
            out["at"] = p.at
        return out
    out = {"kind": "dft", "name": p.name, "omegas": list(p.omegas),
           "t_start": p.t_start}
    if p.position is not None:
        out["position"] = list(p.position)
    else:
        out.update({"axis": p.axis, "span": list(p.span), "stride": p.stride})
        if p.at is not None:
            out["at"] = p.at
    return out


def _source_dict(s):
    out = {"kind": s.kind, "waveform": _waveform_dict(s.waveform),
           "amplitude": s.amplitude}
    if s.kind == "point_additive":
        out["position"] = list(s.position)
    else:
        out.update({"x": s.x, "phase_ky": s.phase_ky, "profile": s.profile})
    return out


def config_dict(cfg):
    if cfg.grid.x_min != 0.0:
        raise ValueError("internal shifted-domain configs are not serializable")
    medium = {"kind": cfg.medium.kind}
    if cfg.medium.kind == "uniform":
        medium.update({"a": cfg.medium.a, "b": cfg.medium.b})
    elif cfg.medium.kind == "waveguide":
        medium.update({"background": list(cfg.medium.background),
                       "core": list(cfg.medium.core),
                       "core_y_span": list(cfg.medium.core_y_span)})
    else:
        medium.update({"background": list(cfg.medium.background),
                       "rectangles": [
                           {"a": r[0], "b": r[1], "x_span": list(r[2]),
                            **({"y_span": list(r[3])} if r[3] is not None else {})}
                           for r in cfg.medium.rectangles]})
    run = {"cfl_safety": cfg.run.cfl_safety, "check_every": cfg.run.check_every,
           "snapshot_stride": cfg.run.snapshot_stride}
    if cfg.run.duration is not None:
        run["duration"] = cfg.run.duration
    if cfg.run.duration_periods is not None:
        run["duration_periods"] = cfg.run.duration_periods
    return {
        "grid": {"dim": cfg.grid.dim, "extent": list(cfg.grid.extent),
                 "resolution": cfg.grid.resolution,
                 "boundary_y": cfg.grid.boundary_y},
        "medium": medium,
        "absorbers": {name: _side_dict(cfg.absorbers.side(name))
                      for name in cfg.absorbers.active_sides()},
        "sources": [_source_dict(s) for s in cfg.sources],
        "probes": [_probe_dict(p) for p in cfg.probes],
        "run": run,
        "outputs": {"directory": cfg.outputs.directory,
                    "snapshots": cfg.outputs.snapshots},
    }


def serialize_config(cfg):
    return json.dumps(config_dict(cfg), indent=2, sort_keys=True) + "\n"


# -- config surgery (used by the measurement protocols) ----------------------

def with_absorber(cfg, side_name, side):
    return replace(cfg, absorbers=replace(cfg.absorbers, **{side_name: side}))


def without_absorber(cfg, side_name):
    return with_absorber(cfg, side_name, AbsorberSide())


def with_resolution(cfg, resolution):
    return replace(cfg, grid=replace(cfg.grid, resolution=float(resolution)))


def extended_in_x(cfg, pad, side_name="x_hi"):
    """Grow the domain by ``pad`` on one x side, keeping coordinates absolute."""
    extent = list(cfg.grid.extent)
    extent[0] += pad
    x_min = cfg.grid.x_min - pad if side_name == "x_lo" else cfg.grid.x_min
    return replace(cfg, grid=replace(cfg.grid, extent=tuple(extent), x_min=x_min))


# -- building and running ----------------------------------------------------

@dataclass
class BuiltScenario:
    grid: object
    medium: object
    coeffs: object
    stepper: str               # plain | pml | nonpml
    sources: tuple
    dt: float
    n_steps: int
    duration: float


def _resolve_duration(cfg, duration_override):
    if duration_override is not None:
        return float(duration_override)
    if cfg.run.duration is not None:
        return cfg.run.duration
    periods = cfg.run.duration_periods if cfg.run.duration_periods is not None else 10.0
    omega = cfg.sources[0].waveform.omega
    return periods * 2.0 * np.pi / omega


def build_scenario(cfg, dt=None, duration=None):
    grid = cfg.grid.build()
    medium = cfg.medium.build(grid)
    coeffs = build_pml_maps(grid, cfg.absorbers, c_ref=medium.c_max(grid))
    if coeffs.has_any:
        stepper = "nonpml" if cfg.absorbers.mode == NONPML_SCALAR else "pml"
    else:
        stepper = "plain"
    sources = tuple(s.build(grid, medium) for s in cfg.sources)
    dt = float(dt) if dt is not None else cfl_dt(grid, medium, cfg.run.cfl_safety)
    total = _resolve_duration(cfg, duration)
    n_steps = int(np.ceil(total / dt - 1e-12))
    return BuiltScenario(grid=grid, medium=medium, coeffs=coeffs, stepper=stepper,
                         sources=sources, dt=dt, n_steps=n_steps, duration=total)


@dataclass
class SimulationResult:
    built: BuiltScenario
    state: FieldState
    recorders: dict


def simulate(cfg, probes=None, dt=None, duration=None, snapshot_cb=None):
    """Run a scenario in memory and return the final state plus recorders.

    ``probes`` overrides the config's probe list (used by the measurement
    protocols); ``snapshot_cb(state, step, t)`` is invoked on the snapshot
    stride when given.
    """
    built = build_scenario(cfg, dt=dt, duration=duration)
    grid, medium, coeffs = built.grid, built.medium, built.coeffs
    state = FieldState.allocate(grid, with_aux=(built.stepper == "pml" and grid.dim == 2))
    probe_list = cfg.probes if probes is None else tuple(probes)
    recorders = {p.name: make_recorder(p, grid, built.dt) for p in probe_list}
    stride = cfg.run.snapshot_stride
    check_every = max(int(cfg.run.check_every), 0)

    for n in range(built.n_steps):
        if built.stepper == "pml":
            step_pml(state, medium, coeffs, grid, built.dt)
        elif built.stepper == "nonpml":
            step_nonpml_absorber(state, medium, coeffs, grid, built.dt)
        else:
            step_plain(state, medium, grid, built.dt)
        t = (n + 1) * built.dt
        for src in built.sources:
            apply_source(state, src, grid, built.dt, t)
        for rec in recorders.values():
            rec.record(state, grid, t)
        if check_every and (n + 1) % check_every == 0 and not state.is_finite():
            raise InstabilityError(n + 1)
        if snapshot_cb is not None and stride and (n + 1) % stride == 0:
            snapshot_cb(state, n + 1, t)
    if not state.is_finite():
        raise InstabilityError(built.n_steps)
    return SimulationResult(built=built, state=state, recorders=recorders)


# -- field snapshots ----------------------------------------------------------

RAW_MAGIC = b"PMLW"
RAW_HEADER = "<4sIIIIddd"      # magic, version, dim, nx, ny, t, dx, dy


def emit_field_snapshot(state, grid, path, fmt="csv", t=0.0):
    """Write u to disk; csv is human-readable, raw is the binary layout
    magic 'PMLW', u32 version/dim/nx/ny, f64 t/dx/dy, then row-major f64 u."""
    ny = grid.ny if grid.dim == 2 else 1
    dy = grid.dy if grid.dim == 2 else 0.0
    u = state.u if grid.dim == 2 else state.u[:, None]
    path = Path(path)
    if fmt == "csv":
        lines = [f"# t={t:.17g} nx={grid.nx} ny={ny} dx={grid.dx:.17g} dy={dy:.17g}"]
        for row in u:
            lines.append(",".join(f"{v:.17g}" for v in row))
        path.write_text("\n".join(lines) + "\n")
    elif fmt == "raw":
        header = struct.pack(RAW_HEADER, RAW_MAGIC, 1, grid.dim, grid.nx, ny,
                             t, grid.dx, dy)
        path.write_bytes(header + np.ascontiguousarray(u, dtype="<f8").tobytes())
    else:
        raise ValueError(f"unknown snapshot format {fmt!r}")
    return path


def read_field_snapshot(path):
    """Read a snapshot back; returns (u, meta dict)."""
    path = Path(path)
    data = path.read_bytes()
    if data[:4] == RAW_MAGIC:
        size = struct.calcsize(RAW_HEADER)
        magic, version, dim, nx, ny, t, dx, dy = struct.unpack(RAW_HEADER, data[:size])
        u = np.frombuffer(data[size:], dtype="<f8").reshape(nx, ny).copy()
        meta = {"t": t, "nx": nx, "ny": ny, "dx": dx, "dy": dy, "dim": dim,
                "version": version}
    else:
        lines = data.decode().strip().split("\n")
        meta = {}
        for item in lines[0].lstrip("# ").split():
            key, val = item.split("=")
            meta[key] = int(val) if key in ("nx", "ny") else float(val)
        u = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    if u.shape[1] == 1:
        u = u[:, 0]
    return u, meta


# -- probe CSV output ---------------------------------------------------------

DFT_CONVENTION = "amplitude = 2|sum u exp(+i omega t) dt| / T"


def write_probe_csv(recorder, path):
    path = Path(path)
    lines = []
    if isinstance(recorder, TimeSeriesRecorder):
        p = recorder.probe
        lines.append(f"# probe={p.name} kind=time_series position={list(p.position)}")
        lines.append("t,u")
        for t, u in zip(recorder.times, recorder.values):
            lines.append(f"{t:.17g},{u:.17g}")
    elif isinstance(recorder, LineProfileRecorder):
        p = recorder.probe
        lines.append(f"# probe={p.name} kind=line_profile axis={p.axis} stride={p.stride}")
        coords = " ".join(f"{c:.17g}" for c in recorder.points[:, 0 if p.axis == 'x' else 1])
        lines.append(f"# samples: {coords}")
        lines.append("t," + ",".join(f"u{i}" for i in range(recorder.points.shape[0])))
        for t, row in zip(recorder.times, recorder.rows):
            lines.append(f"{t:.17g}," + ",".join(f"{v:.17g}" for v in row))
    elif isinstance(recorder, DftRecorder):
        p = recorder.probe
        lines.append(f"# probe={p.name} kind=dft t_start={p.t_start:.17g} {DFT_CONVENTION}")
        amps = recorder.amplitudes()
        header = ["x", "y"][:recorder.points.shape[1]]
        header += [f"amp_omega={w:.17g}" for w in p.omegas]
        lines.append(",".join(header))
        for i in range(recorder.points.shape[0]):
            row = [f"{c:.17g}" for c in recorder.points[i]]
            row += [f"{amps[k, i]:.17g}" for k in range(len(p.omegas))]
            lines.append(",".join(row))
    else:
        raise TypeError(f"unknown recorder type {type(recorder).__name__}")
    path.write_text("\n".join(lines) + "\n")
    return path


# -- manifest and the run verb -------------------------------------------------

def _sha256(data):
    return hashlib.sha256(data).hexdigest()


@dataclass
class RunManifest:
    tool_version: str
    dt: float
    nx: int
    ny: int | None
    n_steps: int
    stepper: str
    sigma_checksums: dict
    wall_clock_s: float = 0.0
    outputs: tuple = ()

    def to_dict(self):
        return dataclasses.asdict(self)

    def write(self, path):
        Path(path).write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n")


def output_root():
    return Path(os.environ.get("PMLW_OUT", "."))


def run_scenario(cfg, out_dir=None):
    """Run a scenario and write probe CSVs, snapshots, and the manifest.

    The manifest (resolved numeric parameters and coefficient checksums) is
    written before any field data, then finalized with the output file list
    and wall-clock time.
    """
    if out_dir is None:
        out_dir = output_root() / cfg.outputs.directory
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    built = build_scenario(cfg)
    manifest = RunManifest(
        tool_version=__version__,
        dt=built.dt,
        nx=built.grid.nx,
        ny=built.grid.ny,
        n_steps=built.n_steps,
        stepper=built.stepper,
        sigma_checksums={name: _sha256(arr.tobytes())
                         for name, arr in built.coeffs.arrays()},
    )
    manifest_path = out_dir / "manifest.json"
    manifest.write(manifest_path)

    t0 = time.monotonic()
    written = []
    fmt = cfg.outputs.snapshots

    def snapshot_cb(state, step, t):
        if fmt == "none":
            return
        ext = "csv" if fmt == "csv" else "raw"
        written.append(emit_field_snapshot(state, built.grid,
                                           out_dir / f"u_step{step:06d}.{ext}",
                                           fmt=fmt, t=t))

    result = simulate(cfg, dt=built.dt, snapshot_cb=snapshot_cb)
    for name, rec in result.recorders.items():
        written.append(write_probe_csv(rec, out_dir / f"probe_{name}.csv"))

    manifest.wall_clock_s = time.monotonic() - t0
    manifest.outputs = tuple(
        {"path": p.name, "sha256": _sha256(p.read_bytes())} for p in written)
    manifest.write(manifest_path)
    return manifest
