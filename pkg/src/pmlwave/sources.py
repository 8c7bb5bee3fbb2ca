"""Additive (soft) sources and the transverse-mode helper for waveguides.

Sources add dt * amplitude * waveform(t) into u, so they do not scatter
returning waves.  Line sources can carry a transverse profile (for mode
injection) and a linear phase gradient exp(-i ky y) (for launching plane
waves at an angle in a periodic strip).
"""

import math
from dataclasses import dataclass

import numpy as np

from .grid import HARD_WALL


@dataclass(frozen=True)
class GaussianPulse:
    """sin(omega0*(t - delay)) under a Gaussian envelope of width tau."""

    omega0: float
    tau: float
    delay: float = 0.0

    def __post_init__(self):
        if self.omega0 <= 0:
            raise ValueError("omega0 must be positive")
        if self.tau <= 0:
            raise ValueError("tau must be positive")

    @property
    def omega(self):
        return self.omega0

    def __call__(self, t, phase=0.0):
        arg = t - self.delay
        return np.sin(self.omega0 * arg - phase) * math.exp(-arg * arg / (2.0 * self.tau ** 2))


@dataclass(frozen=True)
class ContinuousWave:
    """sin(omega*t), faded in linearly over ramp_time."""

    omega: float
    ramp_time: float = 0.0

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError("omega must be positive")
        if self.ramp_time < 0:
            raise ValueError("ramp_time must be >= 0")

    def __call__(self, t, phase=0.0):
        if self.ramp_time > 0:
            ramp = min(max(t / self.ramp_time, 0.0), 1.0)
        else:
            ramp = 1.0 if t >= 0 else 0.0
        return ramp * np.sin(self.omega * t - phase)


@dataclass(frozen=True)
class PointSource:
    position: tuple
    waveform: object
    amplitude: float = 1.0


@dataclass(frozen=True)
class LineSource:
    """Column source at fixed x spanning all of y (2d only).

    ``profile`` weights the injection per y cell (None = uniform);
    ``phase_ky`` applies the phase -phase_ky * y to the waveform.
    """

    x: float
    waveform: object
    amplitude: float = 1.0
    phase_ky: float = 0.0
    profile: np.ndarray | None = None


def _snap_index(coord, origin, d, n, what):
    idx = int(round((coord - origin) / d))
    if not 0 <= idx < n:
        raise ValueError(f"{what} at {coord} lies outside the grid")
    return idx


def apply_source(state, source, grid, dt, t):
    """Add one step's worth of the source into u at time t."""
    if isinstance(source, PointSource):
        ix = _snap_index(source.position[0], grid.origin[0], grid.dx, grid.nx, "source")
        value = dt * source.amplitude * source.waveform(t)
        if grid.dim == 1:
            state.u[ix] += value
        else:
            iy = _snap_index(source.position[1], grid.origin[1], grid.dy, grid.ny, "source")
            state.u[ix, iy] += value
    elif isinstance(source, LineSource):
        if grid.dim != 2:
            raise ValueError("line sources need a 2d grid")
        ix = _snap_index(source.x, grid.origin[0], grid.dx, grid.nx, "source")
        phases = source.phase_ky * grid.y_centers()
        values = dt * source.amplitude * source.waveform(t, phases)
        if source.profile is not None:
            values = values * source.profile
        state.u[ix, :] += values
    else:
        raise TypeError(f"unknown source type {type(source).__name__}")
    return state


def source_x_position(source):
    return source.position[0] if isinstance(source, PointSource) else source.x


def validate_source_clear_of_absorbers(source, grid, spec):
    """Sources must sit in the interior, outside every absorber span."""
    x = source_x_position(source)
    if spec.x_lo.active and x < grid.x_lo_edge + spec.x_lo.thickness:
        raise ValueError("source lies inside the x_lo absorber")
    if spec.x_hi.active and x > grid.x_hi_edge - spec.x_hi.thickness:
        raise ValueError("source lies inside the x_hi absorber")
    if isinstance(source, PointSource) and grid.dim == 2:
        y = source.position[1]
        if spec.y_lo.active and y < grid.y_lo_edge + spec.y_lo.thickness:
            raise ValueError("source lies inside the y_lo absorber")
        if spec.y_hi.active and y > grid.y_hi_edge - spec.y_hi.thickness:
            raise ValueError("source lies inside the y_hi absorber")
    if isinstance(source, LineSource) and (spec.y_lo.active or spec.y_hi.active):
        raise ValueError("line sources cross y absorbers; use point sources")


def waveguide_mode(grid, medium, omega, which=0):
    """Transverse mode W(y) and propagation constant k of an x-invariant
    2d medium with hard y walls.

    Solves the staggered transverse eigenproblem

        Dy(a_y Dy W) + (omega^2 / b) W = k^2 a_x W,

    the semi-discrete condition for u = W(y) exp(i(kx - omega t)).  Modes
    are ordered by decreasing k^2; which=0 is the most-guided one.  W is
    sampled at cell centers and normalized to peak 1.
    """
    if grid.dim != 2 or grid.boundary_y != HARD_WALL:
        raise ValueError("mode solving needs a 2d grid with hard y walls")
    if not (np.allclose(medium.a_y, medium.a_y[:1, :])
            and np.allclose(medium.b, medium.b[:1, :])):
        raise ValueError("medium must be x-invariant for mode solving")
    ay = medium.a_y[0, :]          # ny+1 face samples
    ax = medium.a_x[0, :]          # y profile at cell centers
    b = medium.b[0, :]
    ny, dy = grid.ny, grid.dy

    main = -(ay[:-1] + ay[1:]) / dy ** 2 + omega ** 2 / b
    off = ay[1:-1] / dy ** 2
    a_mat = np.diag(main) + np.diag(off, 1) + np.diag(off, -1)
    # symmetrize the generalized problem A W = k^2 diag(ax) W
    d_inv_sqrt = 1.0 / np.sqrt(ax)
    m = a_mat * d_inv_sqrt[:, None] * d_inv_sqrt[None, :]
    vals, vecs = np.linalg.eigh(m)
    order = np.argsort(vals)[::-1]
    k_sq = vals[order[which]]
    if k_sq <= 0:
        raise ValueError("no propagating mode at this frequency")
    w = vecs[:, order[which]] * d_inv_sqrt
    peak = w[np.argmax(np.abs(w))]
    return w / peak, float(np.sqrt(k_sq))
