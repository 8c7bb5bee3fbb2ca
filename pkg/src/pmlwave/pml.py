"""Absorbing-layer descriptions and the analytic formulas behind them.

A layer on one side of the grid stretches the derivative transverse to that
side by the complex factor

    s = kappa + i*sigma/omega,        kappa >= 1,  sigma >= 0,

which turns travelling waves exp(ikx) into exp(ikx) * exp(-(k/omega) int sigma)
without creating an interface reflection in the continuum equations.  The
k/omega factor makes the decay rate frequency independent in a dispersionless
medium; the real stretch kappa accelerates the decay of evanescent waves,
which plain sigma leaves untouched.

sigma and kappa turn on polynomially with depth into the layer and are
sampled at every staggered field location they act on.  The remaining
interface reflection of the discretized scheme is what the measurement
harness in :mod:`pmlwave.analysis` quantifies.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .grid import PERIODIC

PML = "pml"
NONPML_SCALAR = "nonpml_scalar"
X_SIDES = ("x_lo", "x_hi")
Y_SIDES = ("y_lo", "y_hi")
SIDES = X_SIDES + Y_SIDES


@dataclass(frozen=True)
class AbsorberSide:
    """One side's absorber: thickness 0 disables it.

    Exactly one of sigma_max / r_target may be given; when neither is, the
    default round-trip target 1e-6 applies.
    """

    thickness: float = 0.0
    degree: int = 2
    sigma_max: float | None = None
    r_target: float | None = None
    kappa_max: float = 1.0
    mode: str = PML

    def __post_init__(self):
        if self.thickness < 0:
            raise ValueError("absorber thickness must be >= 0")
        if self.degree < 0 or int(self.degree) != self.degree:
            raise ValueError("profile degree must be a non-negative integer")
        if self.kappa_max < 1.0:
            raise ValueError("kappa_max must be >= 1")
        if self.mode not in (PML, NONPML_SCALAR):
            raise ValueError(f"unknown absorber mode {self.mode!r}")
        if self.sigma_max is not None and self.r_target is not None:
            raise ValueError("give sigma_max or r_target, not both")
        if self.sigma_max is not None and self.sigma_max < 0:
            raise ValueError("sigma_max must be >= 0")
        if self.r_target is not None and not 0.0 < self.r_target <= 1.0:
            raise ValueError("r_target must lie in (0, 1]")

    @property
    def active(self):
        return self.thickness > 0.0

    def resolved_sigma_max(self, c_ref):
        """The sigma_max this side uses, deriving it from r_target if needed."""
        if self.sigma_max is not None:
            return self.sigma_max
        r = self.r_target if self.r_target is not None else 1e-6
        if c_ref is None:
            raise ValueError("a reference speed is needed to resolve r_target")
        return sigma_max_for_round_trip(r, self.thickness, self.degree, c_ref)


@dataclass(frozen=True)
class PmlSpec:
    x_lo: AbsorberSide = AbsorberSide()
    x_hi: AbsorberSide = AbsorberSide()
    y_lo: AbsorberSide = AbsorberSide()
    y_hi: AbsorberSide = AbsorberSide()

    def side(self, name):
        return getattr(self, name)

    def active_sides(self):
        return [name for name in SIDES if self.side(name).active]

    @property
    def mode(self):
        """The common mode of all active sides ('pml' when none is active)."""
        modes = {self.side(name).mode for name in self.active_sides()}
        if len(modes) > 1:
            raise ValueError("all active absorber sides must share one mode")
        return modes.pop() if modes else PML

    def without(self, name):
        return replace(self, **{name: AbsorberSide()})


def sigma_profile(xi, degree, sigma_max):
    """Polynomial turn-on sigma_max * xi**degree on relative depth xi in [0, 1].

    degree 0 is a constant step profile (0**0 == 1 at the inner edge).
    """
    xi = np.asarray(xi, dtype=float)
    if np.any(xi < 0.0) or np.any(xi > 1.0):
        raise ValueError("relative depth xi must lie in [0, 1]")
    if sigma_max < 0:
        raise ValueError("sigma_max must be >= 0")
    out = sigma_max * xi ** degree
    return float(out) if np.isscalar(out) or out.ndim == 0 else out


def sigma_max_for_round_trip(r_target, thickness, degree, c):
    """Peak conductivity giving amplitude ratio r_target after a round trip.

    At normal incidence the one-way attenuation is exp(-(1/c) int sigma) and
    the wall doubles the path, so with int sigma = sigma_max*L/(degree+1):

        sigma_max = -(degree + 1) * c * ln(r_target) / (2 L).
    """
    if not 0.0 < r_target <= 1.0:
        raise ValueError("r_target must lie in (0, 1]")
    if thickness <= 0:
        raise ValueError("thickness must be positive")
    if c <= 0:
        raise ValueError("speed must be positive")
    return -(degree + 1) * c * math.log(r_target) / (2.0 * thickness)


def attenuation_factor(k_x, omega, sigma_integral):
    """Amplitude ratio exp(-(k_x/omega) * int sigma) across a layer.

    For a plane wave at angle theta in a medium of speed c,
    k_x/omega = cos(theta)/c, so absorption weakens toward glancing
    incidence.
    """
    if omega <= 0:
        raise ValueError("omega must be positive")
    return np.exp(-(k_x / omega) * sigma_integral)


def evanescent_factor(kappa_ev, sigma, omega, kappa_stretch, x):
    """Complex amplitude of an evanescent wave exp(-kappa_ev * x) after
    stretching x by kappa_stretch + i*sigma/omega.

    The magnitude exp(-kappa_ev * kappa_stretch * x) does not involve sigma:
    plain conductivity only adds the oscillation exp(-i (sigma/omega)
    kappa_ev x), while a real stretch kappa > 1 genuinely accelerates the
    decay.
    """
    if omega <= 0:
        raise ValueError("omega must be positive")
    if kappa_stretch < 1.0:
        raise ValueError("kappa_stretch must be >= 1")
    return np.exp(-kappa_ev * kappa_stretch * x) * np.exp(-1j * (sigma / omega) * kappa_ev * x)


def stretch_factor(sigma, omega, kappa=1.0):
    """The dimensionless stretch s = kappa + i*sigma/omega (Re s >= 1,
    Im s >= 0 for an absorbing layer)."""
    if omega <= 0:
        raise ValueError("omega must be positive")
    if kappa < 1.0:
        raise ValueError("kappa must be >= 1")
    if sigma < 0.0:
        raise ValueError("sigma must be >= 0")
    return complex(kappa, sigma / omega)


@dataclass
class PmlCoefficients:
    """sigma and kappa sampled at every staggered location, one 1d array per
    axis and per staggering (the x and y maps are independent and simply
    overlap at corners)."""

    mode: str
    sigma_x_u: np.ndarray
    sigma_x_v: np.ndarray
    kappa_x_u: np.ndarray
    kappa_x_v: np.ndarray
    sigma_y_u: np.ndarray | None = None
    sigma_y_v: np.ndarray | None = None
    kappa_y_u: np.ndarray | None = None
    kappa_y_v: np.ndarray | None = None
    resolved_sigma_max: dict = field(default_factory=dict)
    _term_cache: dict = field(default_factory=dict, repr=False)

    @property
    def has_any(self):
        arrays = [self.sigma_x_u, self.kappa_x_u - 1.0]
        if self.sigma_y_u is not None:
            arrays += [self.sigma_y_u, self.kappa_y_u - 1.0]
        return any(np.any(a != 0.0) for a in arrays)

    def arrays(self):
        for name in ("sigma_x_u", "sigma_x_v", "kappa_x_u", "kappa_x_v",
                     "sigma_y_u", "sigma_y_v", "kappa_y_u", "kappa_y_v"):
            arr = getattr(self, name)
            if arr is not None:
                yield name, arr


def _axis_maps(coords, extent_lo_edge, extent_hi_edge, lo, hi, c_ref, snap):
    """sigma and kappa along one axis at the given sample coordinates."""
    sigma = np.zeros_like(coords)
    kappa = np.ones_like(coords)
    for side_spec, depth in (
        (lo, (extent_lo_edge + lo.thickness) - coords),
        (hi, coords - (extent_hi_edge - hi.thickness)),
    ):
        if not side_spec.active:
            continue
        d = depth.copy()
        d[np.abs(d) < snap] = 0.0
        inside = d >= 0.0
        xi = np.clip(d / side_spec.thickness, 0.0, 1.0)
        s_max = side_spec.resolved_sigma_max(c_ref)
        sigma = sigma + np.where(inside, sigma_profile(xi, side_spec.degree, s_max), 0.0)
        kappa = kappa + np.where(
            inside, (side_spec.kappa_max - 1.0) * xi ** side_spec.degree, 0.0)
    return sigma, kappa


def build_pml_maps(grid, spec, c_ref=None):
    """Sample a PmlSpec onto the staggered grid.

    ``c_ref`` is the speed used to resolve r_target sides into sigma_max
    (callers normally pass the medium's c_max).
    """
    spec.mode  # validates that active sides agree
    for name in spec.active_sides():
        side_spec = spec.side(name)
        axis_extent = grid.extent_x if name in X_SIDES else grid.extent_y
        if name in Y_SIDES:
            if grid.dim == 1:
                raise ValueError(f"{name} absorber needs a 2d grid")
            if grid.boundary_y == PERIODIC:
                raise ValueError("y absorbers conflict with periodic y")
        if side_spec.thickness > axis_extent:
            raise ValueError(f"{name} absorber thicker than the domain")
    if spec.x_lo.thickness + spec.x_hi.thickness > grid.extent_x:
        raise ValueError("x_lo and x_hi absorber spans overlap")
    if grid.dim == 2 and spec.y_lo.thickness + spec.y_hi.thickness > grid.extent_y:
        raise ValueError("y_lo and y_hi absorber spans overlap")

    snap_x = 1e-9 * grid.dx
    sig_xu, kap_xu = _axis_maps(grid.x_centers(), grid.x_lo_edge, grid.x_hi_edge,
                                spec.x_lo, spec.x_hi, c_ref, snap_x)
    sig_xv, kap_xv = _axis_maps(grid.x_faces(), grid.x_lo_edge, grid.x_hi_edge,
                                spec.x_lo, spec.x_hi, c_ref, snap_x)
    coeffs = PmlCoefficients(mode=spec.mode,
                             sigma_x_u=sig_xu, sigma_x_v=sig_xv,
                             kappa_x_u=kap_xu, kappa_x_v=kap_xv)
    if grid.dim == 2:
        snap_y = 1e-9 * grid.dy
        coeffs.sigma_y_u, coeffs.kappa_y_u = _axis_maps(
            grid.y_centers(), grid.y_lo_edge, grid.y_hi_edge,
            spec.y_lo, spec.y_hi, c_ref, snap_y)
        coeffs.sigma_y_v, coeffs.kappa_y_v = _axis_maps(
            grid.y_faces(), grid.y_lo_edge, grid.y_hi_edge,
            spec.y_lo, spec.y_hi, c_ref, snap_y)
    for name in spec.active_sides():
        coeffs.resolved_sigma_max[name] = spec.side(name).resolved_sigma_max(c_ref)
    return coeffs
