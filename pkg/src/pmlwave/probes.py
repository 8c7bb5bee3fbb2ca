"""Probes: point time series, line profiles, and running DFT amplitudes.

Off-center sample points use bilinear interpolation of u.  The DFT probe
accumulates sum_n u(t_n) exp(+i omega t_n) dt per requested omega and
reports the amplitude 2*|sum|/T of the real signal over the accumulated
duration T.
"""

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class TimeSeriesProbe:
    name: str
    position: tuple


@dataclass(frozen=True)
class LineProfileProbe:
    """u along an axis-aligned segment, one row per recorded step."""

    name: str
    axis: str
    span: tuple
    at: float | None = None
    stride: int = 1


@dataclass(frozen=True)
class DftProbe:
    """Running DFT at a point or along an axis-aligned segment.

    Accumulation starts at t_start, after transients have settled.
    """

    name: str
    omegas: tuple
    position: tuple | None = None
    axis: str | None = None
    span: tuple | None = None
    at: float | None = None
    stride: int = 1
    t_start: float = 0.0

    def __post_init__(self):
        if (self.position is None) == (self.axis is None):
            raise ValueError("give either a position or a segment (axis+span)")
        if self.axis is not None and self.span is None:
            raise ValueError("segment probes need a span")


def _axis_points(grid, axis, span, at, stride):
    """Cell-center sample coordinates along an axis-aligned segment."""
    if axis == "x":
        centers = grid.x_centers()
    elif axis == "y":
        if grid.dim == 1:
            raise ValueError("y segments need a 2d grid")
        centers = grid.y_centers()
    else:
        raise ValueError(f"unknown axis {axis!r}")
    eps = 1e-9 * (centers[1] - centers[0])
    i0 = np.searchsorted(centers, span[0] - eps)
    i1 = np.searchsorted(centers, span[1] + eps, side="right")
    along = centers[i0:i1:stride]
    if along.size == 0:
        raise ValueError("segment span contains no sample points")
    if grid.dim == 1:
        return along[:, None]
    if at is None:
        raise ValueError("2d segment probes need the transverse coordinate 'at'")
    other = np.full_like(along, at)
    cols = (along, other) if axis == "x" else (other, along)
    return np.column_stack(cols)


def probe_points(probe, grid):
    """(n, dim) array of sample coordinates for any probe kind."""
    if isinstance(probe, TimeSeriesProbe) or (
            isinstance(probe, DftProbe) and probe.position is not None):
        return np.atleast_2d(np.asarray(probe.position, dtype=float))
    return _axis_points(grid, probe.axis, probe.span, probe.at, probe.stride)


def interpolate(u, grid, points):
    """Bilinear interpolation of u at (n, dim) coordinates."""
    fx = (points[:, 0] - grid.origin[0]) / grid.dx
    ix = np.clip(np.floor(fx).astype(int), 0, grid.nx - 2)
    wx = fx - ix
    if grid.dim == 1:
        return (1.0 - wx) * u[ix] + wx * u[ix + 1]
    fy = (points[:, 1] - grid.origin[1]) / grid.dy
    iy = np.clip(np.floor(fy).astype(int), 0, grid.ny - 2)
    wy = fy - iy
    return ((1.0 - wx) * (1.0 - wy) * u[ix, iy]
            + wx * (1.0 - wy) * u[ix + 1, iy]
            + (1.0 - wx) * wy * u[ix, iy + 1]
            + wx * wy * u[ix + 1, iy + 1])


def validate_probe_in_bounds(probe, grid):
    pts = probe_points(probe, grid)
    lo = grid.origin[0]
    hi = grid.origin[0] + (grid.nx - 1) * grid.dx
    tol = 1e-9 * grid.dx
    if np.any(pts[:, 0] < lo - tol) or np.any(pts[:, 0] > hi + tol):
        raise ValueError(f"probe {probe.name!r} leaves the grid in x")
    if grid.dim == 2:
        lo_y = grid.origin[1]
        hi_y = grid.origin[1] + (grid.ny - 1) * grid.dy
        tol_y = 1e-9 * grid.dy
        if np.any(pts[:, 1] < lo_y - tol_y) or np.any(pts[:, 1] > hi_y + tol_y):
            raise ValueError(f"probe {probe.name!r} leaves the grid in y")


# -- recorders ---------------------------------------------------------------

@dataclass
class TimeSeriesRecorder:
    probe: TimeSeriesProbe
    points: np.ndarray
    times: list = field(default_factory=list)
    values: list = field(default_factory=list)

    def record(self, state, grid, t):
        self.times.append(t)
        self.values.append(float(interpolate(state.u, grid, self.points)[0]))

    def series(self):
        return np.asarray(self.times), np.asarray(self.values)


@dataclass
class LineProfileRecorder:
    probe: LineProfileProbe
    points: np.ndarray
    times: list = field(default_factory=list)
    rows: list = field(default_factory=list)

    def record(self, state, grid, t):
        self.times.append(t)
        self.rows.append(interpolate(state.u, grid, self.points))


@dataclass
class DftRecorder:
    probe: DftProbe
    points: np.ndarray
    dt: float
    acc: np.ndarray = None
    n_samples: int = 0

    def __post_init__(self):
        if self.acc is None:
            self.acc = np.zeros((len(self.probe.omegas), self.points.shape[0]),
                                dtype=complex)

    def record(self, state, grid, t):
        if t < self.probe.t_start:
            return
        u_pts = interpolate(state.u, grid, self.points)
        phase = np.exp(1j * np.asarray(self.probe.omegas) * t) * self.dt
        self.acc += phase[:, None] * u_pts[None, :]
        self.n_samples += 1

    def amplitudes(self):
        """2|sum u exp(+i omega t) dt| / T, rows per omega."""
        if self.n_samples == 0:
            raise ValueError(f"dft probe {self.probe.name!r} recorded nothing")
        duration = self.n_samples * self.dt
        return 2.0 * np.abs(self.acc) / duration


def make_recorder(probe, grid, dt):
    pts = probe_points(probe, grid)
    if isinstance(probe, TimeSeriesProbe):
        return TimeSeriesRecorder(probe, pts)
    if isinstance(probe, LineProfileProbe):
        return LineProfileRecorder(probe, pts)
    if isinstance(probe, DftProbe):
        return DftRecorder(probe, pts, dt)
    raise TypeError(f"unknown probe type {type(probe).__name__}")
