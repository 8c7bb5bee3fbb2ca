"""Leap-frog update kernels for the first-order scalar wave system.

Interior (undamped) system, u at integer and v at half-integer time levels:

    du/dt = b * div(v),        dv/dt = a * grad(u).

Hard x walls are ghost cells with u = 0 beyond the outer faces; the y
boundary wraps when periodic.

Inside an absorbing layer the spatial derivatives are stretched by
s = kappa + i*sigma/omega per axis.  Multiplying the u equation by s_x*s_y
and introducing auxiliary fields to keep the result local in time gives

    kx*ky du/dt = b*(ky dvx/dx + kx dvy/dy) - (ky*sx + kx*sy) u
                  + psi_x + psi_y - phi
    dpsi_x/dt = sy * b * dvx/dx        (zero wherever sy = 0)
    dpsi_y/dt = sx * b * dvy/dy        (zero wherever sx = 0)
    dphi/dt   = sx * sy * u            (zero outside corner overlaps)
    kx dvx/dt = a du/dx - sx vx        (and the y analogue)

which with kappa = 1 and a single nonzero sigma reduces to the familiar
one-direction layer equations, and with sigma = 0, kappa = 1 to the plain
system.  Loss terms are discretized semi-implicitly,

    w_new = ((1 - s*dt/2) * w + dt * RHS) / (1 + s*dt/2),

unconditionally stable in s and exact for the uniform-field decay test;
kappa divides the time step.  Auxiliary fields advance by explicit forward
differences driven by the freshly updated v; the u update sees their
midpoint values, keeping the scheme time-centered.

The non-layer scalar absorber drops the stretching entirely and just damps
u: du/dt = b div(v) - (sx + sy) u with undamped v.  It is the baseline that
the layer is measured against.

The trivial-coefficient paths (sigma = 0, kappa = 1) of step_pml and
step_nonpml_absorber perform bit-for-bit the same arithmetic as step_plain;
the equivalence tests rely on this, so keep expression groupings in sync.
"""

from dataclasses import dataclass

import numpy as np

from .grid import PERIODIC


# -- staggered difference helpers (shared by all steppers) -----------------

def _grad_x(u, grid):
    """du/dx at x faces, ghost u = 0 beyond the walls."""
    if u.ndim == 1:
        up = np.zeros(u.shape[0] + 2)
        up[1:-1] = u
    else:
        up = np.zeros((u.shape[0] + 2, u.shape[1]))
        up[1:-1, :] = u
    return (up[1:] - up[:-1]) / grid.dx


def _grad_y(u, grid):
    """du/dy at y faces; wraps for periodic y, ghost zeros for hard walls."""
    if grid.boundary_y == PERIODIC:
        return (np.roll(u, -1, axis=1) - u) / grid.dy
    up = np.zeros((u.shape[0], u.shape[1] + 2))
    up[:, 1:-1] = u
    return (up[:, 1:] - up[:, :-1]) / grid.dy


def _div_x(v_x, grid):
    return (v_x[1:] - v_x[:-1]) / grid.dx


def _div_y(v_y, grid):
    if grid.boundary_y == PERIODIC:
        return (v_y - np.roll(v_y, 1, axis=1)) / grid.dy
    return (v_y[:, 1:] - v_y[:, :-1]) / grid.dy


def step_plain(state, medium, grid, dt):
    """Advance one leap-frog cycle of the undamped interior update."""
    u = state.u
    state.v_x = state.v_x + dt * (medium.a_x * _grad_x(u, grid))
    if grid.dim == 2:
        state.v_y = state.v_y + dt * (medium.a_y * _grad_y(u, grid))
        dvx = _div_x(state.v_x, grid)
        dvy = _div_y(state.v_y, grid)
        state.u = u + dt * (medium.b * dvx + medium.b * dvy)
    else:
        state.u = u + dt * (medium.b * _div_x(state.v_x, grid))
    state.t_step += 1
    return state


# -- precomputed per-(coeffs, medium, dt) update terms ----------------------

@dataclass
class _Terms:
    vx_num: np.ndarray
    vx_inv: np.ndarray
    vx_dt: np.ndarray
    u_num: np.ndarray
    u_inv: np.ndarray
    u_dt: np.ndarray
    vy_num: np.ndarray | None = None
    vy_inv: np.ndarray | None = None
    vy_dt: np.ndarray | None = None
    b_kx: np.ndarray | None = None
    b_ky: np.ndarray | None = None
    sig_x_b_dt: np.ndarray | None = None
    sig_y_b_dt: np.ndarray | None = None
    sig_xy_dt: np.ndarray | None = None


def _loss_factors(sigma, kappa, dt):
    half = sigma * (0.5 * dt) / kappa
    return 1.0 - half, 1.0 / (1.0 + half), dt / kappa


def _pml_terms(coeffs, medium, grid, dt):
    key = ("pml", dt, id(medium))
    terms = coeffs._term_cache.get(key)
    if terms is not None:
        return terms
    if grid.dim == 1:
        vx_num, vx_inv, vx_dt = _loss_factors(coeffs.sigma_x_v, coeffs.kappa_x_v, dt)
        u_num, u_inv, u_dt = _loss_factors(coeffs.sigma_x_u, coeffs.kappa_x_u, dt)
        terms = _Terms(vx_num, vx_inv, vx_dt, u_num, u_inv, u_dt)
    else:
        sx_u = coeffs.sigma_x_u[:, None]
        kx_u = coeffs.kappa_x_u[:, None]
        sy_u = coeffs.sigma_y_u[None, :]
        ky_u = coeffs.kappa_y_u[None, :]
        vx_num, vx_inv, vx_dt = _loss_factors(
            coeffs.sigma_x_v[:, None], coeffs.kappa_x_v[:, None], dt)
        vy_num, vy_inv, vy_dt = _loss_factors(
            coeffs.sigma_y_v[None, :], coeffs.kappa_y_v[None, :], dt)
        s_eff = sx_u / kx_u + sy_u / ky_u
        half = s_eff * (0.5 * dt)
        terms = _Terms(
            vx_num, vx_inv, vx_dt,
            u_num=1.0 - half,
            u_inv=1.0 / (1.0 + half),
            u_dt=dt / (kx_u * ky_u),
            vy_num=vy_num, vy_inv=vy_inv, vy_dt=vy_dt,
            b_kx=medium.b * kx_u,
            b_ky=medium.b * ky_u,
            sig_x_b_dt=(dt * sx_u) * medium.b,
            sig_y_b_dt=(dt * sy_u) * medium.b,
            sig_xy_dt=(dt * sx_u) * sy_u,
        )
    coeffs._term_cache[key] = terms
    return terms


def _nonpml_terms(coeffs, medium, grid, dt):
    key = ("nonpml", dt, id(medium))
    terms = coeffs._term_cache.get(key)
    if terms is not None:
        return terms
    if grid.dim == 1:
        s_sum = coeffs.sigma_x_u
    else:
        s_sum = coeffs.sigma_x_u[:, None] + coeffs.sigma_y_u[None, :]
    half = s_sum * (0.5 * dt)
    terms = _Terms(vx_num=None, vx_inv=None, vx_dt=None,
                   u_num=1.0 - half, u_inv=1.0 / (1.0 + half), u_dt=None)
    coeffs._term_cache[key] = terms
    return terms


def step_pml(state, medium, coeffs, grid, dt):
    """Advance one cycle of the stretched-coordinate absorbing update."""
    t = _pml_terms(coeffs, medium, grid, dt)
    u = state.u
    state.v_x = (t.vx_num * state.v_x
                 + t.vx_dt * (medium.a_x * _grad_x(u, grid))) * t.vx_inv
    if grid.dim == 2:
        if state.psi_x is None:
            raise ValueError("2d absorbing runs need FieldState.allocate(with_aux=True)")
        state.v_y = (t.vy_num * state.v_y
                     + t.vy_dt * (medium.a_y * _grad_y(u, grid))) * t.vy_inv
        dvx = _div_x(state.v_x, grid)
        dvy = _div_y(state.v_y, grid)
        dpsi_x = t.sig_y_b_dt * dvx
        dpsi_y = t.sig_x_b_dt * dvy
        dphi = t.sig_xy_dt * u
        rhs = (t.b_ky * dvx + t.b_kx * dvy
               + (state.psi_x + 0.5 * dpsi_x)
               + (state.psi_y + 0.5 * dpsi_y)
               - (state.phi + 0.5 * dphi))
        state.u = (t.u_num * u + t.u_dt * rhs) * t.u_inv
        state.psi_x = state.psi_x + dpsi_x
        state.psi_y = state.psi_y + dpsi_y
        state.phi = state.phi + dphi
    else:
        state.u = (t.u_num * u
                   + t.u_dt * (medium.b * _div_x(state.v_x, grid))) * t.u_inv
    state.t_step += 1
    return state


def step_nonpml_absorber(state, medium, coeffs, grid, dt):
    """Advance one cycle with plain scalar conductivity on u only."""
    t = _nonpml_terms(coeffs, medium, grid, dt)
    u = state.u
    state.v_x = state.v_x + dt * (medium.a_x * _grad_x(u, grid))
    if grid.dim == 2:
        state.v_y = state.v_y + dt * (medium.a_y * _grad_y(u, grid))
        dvx = _div_x(state.v_x, grid)
        dvy = _div_y(state.v_y, grid)
        state.u = (t.u_num * u + dt * (medium.b * dvx + medium.b * dvy)) * t.u_inv
    else:
        state.u = (t.u_num * u
                   + dt * (medium.b * _div_x(state.v_x, grid))) * t.u_inv
    state.t_step += 1
    return state
