"""Measurement protocols that turn raw runs into quantitative claims.

The reflection of an absorber is measured against a reference run of the
same scenario with that absorber removed and the domain extended far enough
that no wall echo can reach the probe inside the measurement window.  The
incident field is identical in both runs and cancels exactly in the
difference, so the metric isolates whatever the absorber sends back:

    R = max_{t in [t1, t2]} |u_test - u_ref| / max_{t <= t2} |u_ref|,

with t1 just after the direct pulse has passed the probe and t2 one full
round trip to the absorber's inner edge later.  Decay rates inside a layer
are least-squares slopes of ln(amplitude) over the layer's interior, taken
from steady-state DFT profiles.
"""

import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import MeasurementError
from .grid import cfl_dt
from .pml import X_SIDES
from .probes import DftProbe, TimeSeriesProbe
from .scenario import (extended_in_x, simulate, with_resolution,
                       without_absorber)
from .sources import GaussianPulse


@dataclass(frozen=True)
class ReflectionResult:
    reflection: float
    probe_position: tuple
    window: tuple              # (t1, t2)
    reference_extent: float
    echo_time: float           # earliest possible reference-wall artifact

    def __post_init__(self):
        if self.window[1] >= self.echo_time:
            raise MeasurementError(
                f"measurement window ends at {self.window[1]:.3g} but the "
                f"reference wall can echo from {self.echo_time:.3g}; "
                "increase pad_factor")


@dataclass(frozen=True)
class DecayFit:
    slope: float
    intercept: float
    r_squared: float
    span: tuple
    n_points: int


@dataclass(frozen=True)
class SweepPoint:
    variable: str
    value: float
    kind: str                  # reflection | slope
    measured: float


def _tested_side(cfg, side):
    active = cfg.absorbers.active_sides()
    if any(name not in X_SIDES for name in active):
        raise MeasurementError("reflection runs support x-side absorbers only")
    if side is None:
        if len(active) != 1:
            raise MeasurementError(
                "give side=... explicitly unless exactly one absorber is active")
        return active[0]
    others = [name for name in active if name != side]
    if others:
        raise MeasurementError(f"absorbers also active on {others}; the scenario "
                               "must only absorb on the side under test")
    return side


def measure_reflection(cfg, probe_x, pad_factor=1.0, probe_y=None, side=None,
                       tail_sigmas=6.0):
    """Reflection of the absorber on one x side of a pulse scenario.

    The tested side may have zero thickness, in which case the bare hard
    wall is measured (R close to 1).  The probe must sit between the source
    and the absorber.
    """
    side = _tested_side(cfg, side)
    layer = cfg.absorbers.side(side)
    src = cfg.sources[0]
    if not isinstance(src.waveform, GaussianPulse):
        raise MeasurementError("reflection measurement needs a pulse source")
    x_s = src.position[0] if src.kind == "point_additive" else src.x
    t0, tau = src.waveform.delay, src.waveform.tau

    grid = cfg.grid.build()
    medium = cfg.medium.build(grid)
    c_lo, c_hi = medium.c_min(grid), medium.c_max(grid)
    if side == "x_hi":
        inner_edge = grid.x_hi_edge - layer.thickness
        d_sp, d_pa = probe_x - x_s, inner_edge - probe_x
    else:
        inner_edge = grid.x_lo_edge + layer.thickness
        d_sp, d_pa = x_s - probe_x, probe_x - inner_edge
    if d_sp <= 0 or d_pa <= 0:
        raise MeasurementError("probe must lie between the source and the absorber")

    tail = tail_sigmas * tau
    t1 = t0 + d_sp / c_lo + tail
    t2 = t1 + 2.0 * d_pa / c_lo
    pad = pad_factor * c_hi * t2 / 2.0

    ref_cfg = extended_in_x(without_absorber(cfg, side), pad, side_name=side)
    ref_grid = ref_cfg.grid.build()
    if side == "x_hi":
        wall = ref_grid.x_hi_edge
        echo_time = ((wall - x_s) + (wall - probe_x)) / c_hi
    else:
        wall = ref_grid.x_lo_edge
        echo_time = ((x_s - wall) + (probe_x - wall)) / c_hi

    if probe_y is None and grid.dim == 2:
        probe_y = grid.origin[1] + (grid.ny // 2) * grid.dy
    position = (probe_x,) if grid.dim == 1 else (probe_x, probe_y)
    probe = TimeSeriesProbe(name="reflection", position=position)

    dt = cfl_dt(grid, medium, cfg.run.cfl_safety)
    res_test = simulate(cfg, probes=[probe], duration=t2, dt=dt)
    res_ref = simulate(ref_cfg, probes=[probe], duration=t2, dt=dt)
    ts, u_test = res_test.recorders["reflection"].series()
    _, u_ref = res_ref.recorders["reflection"].series()

    denom = float(np.max(np.abs(u_ref)))
    if denom == 0.0:
        raise MeasurementError("reference signal is identically zero at the probe")
    in_window = (ts >= t1) & (ts <= t2)
    if not np.any(in_window):
        raise MeasurementError("measurement window contains no samples")
    r = float(np.max(np.abs(u_test[in_window] - u_ref[in_window]))) / denom
    return ReflectionResult(reflection=r, probe_position=position,
                            window=(t1, t2), reference_extent=ref_cfg.grid.extent[0],
                            echo_time=echo_time)


def fit_decay_rate(x, amplitude, span=(0.2, 0.8)):
    """Least-squares line through (x, ln amplitude) over a fractional span.

    ``span`` selects the fit window as fractions of the given x range; the
    default keeps the inner 60%, excluding edge transients on both sides.
    """
    x = np.asarray(x, dtype=float)
    amplitude = np.asarray(amplitude, dtype=float)
    lo = x[0] + span[0] * (x[-1] - x[0])
    hi = x[0] + span[1] * (x[-1] - x[0])
    keep = (x >= lo) & (x <= hi)
    if np.count_nonzero(keep) < 8:
        raise ValueError("need at least 8 samples inside the fit span")
    if np.any(amplitude[keep] <= 0):
        raise ValueError("amplitudes must be positive inside the fit span")
    xs = x[keep]
    ys = np.log(amplitude[keep])
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = ys - (slope * xs + intercept)
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    ss_res = float(np.sum(resid ** 2))
    r2 = 1.0 if ss_tot == 0.0 and ss_res < 1e-24 else 1.0 - ss_res / max(ss_tot, 1e-300)
    return DecayFit(slope=float(slope), intercept=float(intercept), r_squared=r2,
                    span=(float(lo), float(hi)), n_points=int(np.count_nonzero(keep)))


def snap_angle(theta_deg, omega, c, length_y):
    """Snap an incidence angle to the nearest one whose transverse wavenumber
    fits the periodic strip: k_y = 2 pi m / L_y with integer m."""
    if not 0.0 <= theta_deg < 90.0:
        raise ValueError("incidence angle must lie in [0, 90) degrees")
    k = omega / c
    m = round(k * math.sin(math.radians(theta_deg)) * length_y / (2.0 * math.pi))
    k_y = 2.0 * math.pi * m / length_y
    if k_y >= k:
        raise ValueError(f"no admissible angle near {theta_deg} degrees on this strip")
    return math.degrees(math.asin(k_y / k)), k_y


def dft_profile(cfg, omega, span, at_y=None, t_start=0.0):
    """Run a scenario and return (x, DFT amplitude at omega) along an x span."""
    grid = cfg.grid.build()
    if at_y is None and grid.dim == 2:
        at_y = grid.origin[1]
    probe = DftProbe(name="dft_profile", omegas=(omega,), axis="x", span=span,
                     at=at_y, t_start=t_start)
    result = simulate(cfg, probes=[probe])
    rec = result.recorders["dft_profile"]
    return rec.points[:, 0], rec.amplitudes()[0]


def steady_decay_slope(cfg, omega, layer_span, fit_span, settle, at_y=None):
    """Fitted ln-amplitude slope of the steady CW field across an x span.

    The DFT accumulates over a whole number of periods after ``settle``;
    the run must leave at least four periods of steady state.
    """
    duration = cfg.run.duration if cfg.run.duration is not None else 0.0
    period = 2.0 * math.pi / omega
    n_periods = math.floor((duration - settle) / period)
    if n_periods < 4:
        raise MeasurementError("run too short to reach steady state; "
                               "increase run.duration")
    t_start = duration - n_periods * period
    x, amps = dft_profile(cfg, omega, layer_span, at_y=at_y, t_start=t_start)
    return fit_decay_rate(x, amps, span=fit_span)


def pulse_response_slope(cfg, omega, layer_span, fit_span, at_y=None):
    """Fitted ln-amplitude slope of the full-run DFT of a pulsed scenario.

    With a compactly supported source and a run long enough for the fields
    to die out, the whole-run DFT is the transfer function at omega, free of
    spectral leakage from startup transients.
    """
    x, amps = dft_profile(cfg, omega, layer_span, at_y=at_y, t_start=0.0)
    return fit_decay_rate(x, amps, span=fit_span)


def angle_sweep(cfg, angles_deg, fit_span=(0.2, 0.8)):
    """Fitted decay slope inside the x_hi layer per plane-wave angle.

    The scenario must be a 2d periodic strip with a CW line source; each
    angle is snapped to the strip's admissible set and launched through the
    source's phase gradient.  Returns one SweepPoint per angle with the
    snapped angle as the value.
    """
    if cfg.grid.dim != 2 or cfg.grid.boundary_y != "periodic":
        raise MeasurementError("angle sweeps need a 2d periodic-y scenario")
    if cfg.medium.kind != "uniform":
        raise MeasurementError("angle sweeps need a uniform medium")
    layer = cfg.absorbers.x_hi
    if not layer.active:
        raise MeasurementError("angle sweeps measure the x_hi absorber")
    src = cfg.sources[0]
    omega = src.waveform.omega
    c = math.sqrt(cfg.medium.a * cfg.medium.b)
    length_y = cfg.grid.extent[1]
    extent_x = cfg.grid.extent[0]
    layer_span = (extent_x - layer.thickness, extent_x)

    points = []
    for theta in angles_deg:
        snapped, k_y = snap_angle(theta, omega, c, length_y)
        cos_snapped = math.cos(math.radians(snapped))
        run_cfg = replace(
            cfg, sources=(replace(src, phase_ky=k_y),) + cfg.sources[1:])
        settle = src.waveform.ramp_time + 2.0 * extent_x / (c * cos_snapped)
        fit = steady_decay_slope(run_cfg, omega, layer_span, fit_span, settle)
        points.append(SweepPoint(variable="theta_deg", value=snapped,
                                 kind="slope", measured=fit.slope))
    return points


def resolution_convergence(cfg, resolutions, probe_x, pad_factor=1.0, side=None):
    """measure_reflection of the same physical scenario at several resolutions."""
    resolutions = list(resolutions)
    if len(resolutions) < 3:
        raise ValueError("need at least 3 resolutions")
    base = resolutions[0]
    for r in resolutions:
        ratio = r / base
        if abs(ratio - round(ratio)) > 1e-9:
            raise ValueError("each resolution must be a multiple of the coarsest")
    points = []
    for r in resolutions:
        res = measure_reflection(with_resolution(cfg, r), probe_x,
                                 pad_factor=pad_factor, side=side)
        points.append(SweepPoint(variable="resolution", value=float(r),
                                 kind="reflection", measured=res.reflection))
    return points


def cone_angle_bound(region_extent, boundary_distance, dim=3):
    """Worst-corner incidence angle (degrees) on a boundary face.

    For a centered source region of the given extent inside a cubic (square
    in 2d) computational domain whose faces sit ``boundary_distance`` beyond
    the region, the worst ray runs from the region's face to the far corner
    of the boundary face: arctan(face half-diagonal / distance).  As the
    boundary recedes this tends to arccos(1/sqrt(3)) ~= 54.7356 deg in 3d
    and 45 deg in 2d; at distance zero it reaches grazing (90 deg).
    """
    if dim not in (2, 3):
        raise ValueError("dim must be 2 or 3")
    if region_extent < 0 or boundary_distance < 0:
        raise ValueError("extent and distance must be >= 0")
    half_face = region_extent / 2.0 + boundary_distance
    half_diagonal = math.sqrt(dim - 1) * half_face
    if boundary_distance == 0.0:
        return 90.0
    return math.degrees(math.atan(half_diagonal / boundary_distance))


def write_sweep_csv(points, path, units=""):
    """One row per SweepPoint; the header names the variable and units."""
    lines = [f"# sweep: one row per scenario{f' ({units})' if units else ''}",
             "variable,value,kind,measured"]
    for p in points:
        lines.append(f"{p.variable},{p.value:.17g},{p.kind},{p.measured:.17g}")
    Path(path).write_text("\n".join(lines) + "\n")
    return path
