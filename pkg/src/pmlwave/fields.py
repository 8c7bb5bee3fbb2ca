"""Field storage and the discrete energy functional."""

from dataclasses import dataclass

import numpy as np


@dataclass
class FieldState:
    """The unknowns of one simulation.

    u sits at cell centers and integer time levels; v_x / v_y at face
    centers and half-integer levels.  psi_x, psi_y and phi are the
    auxiliary fields of the absorbing-layer update; they are allocated only
    for 2d runs with an absorber and start (and, outside overlap regions,
    stay) exactly zero.
    """

    u: np.ndarray
    v_x: np.ndarray
    v_y: np.ndarray | None = None
    psi_x: np.ndarray | None = None
    psi_y: np.ndarray | None = None
    phi: np.ndarray | None = None
    t_step: int = 0

    @classmethod
    def allocate(cls, grid, with_aux=False):
        if grid.dim == 1:
            state = cls(u=np.zeros(grid.nx), v_x=np.zeros(grid.nx + 1))
        else:
            shape_u = (grid.nx, grid.ny)
            state = cls(u=np.zeros(shape_u),
                        v_x=np.zeros((grid.nx + 1, grid.ny)),
                        v_y=np.zeros((grid.nx, grid.n_y_faces)))
            if with_aux:
                state.psi_x = np.zeros(shape_u)
                state.psi_y = np.zeros(shape_u)
                state.phi = np.zeros(shape_u)
        return state

    def fields(self):
        for name in ("u", "v_x", "v_y", "psi_x", "psi_y", "phi"):
            arr = getattr(self, name)
            if arr is not None:
                yield name, arr

    def is_finite(self):
        return all(np.all(np.isfinite(arr)) for _, arr in self.fields())

    def copy(self):
        out = FieldState(u=self.u.copy(), v_x=self.v_x.copy(), t_step=self.t_step)
        for name in ("v_y", "psi_x", "psi_y", "phi"):
            arr = getattr(self, name)
            if arr is not None:
                setattr(out, name, arr.copy())
        return out


def _range_mask(coords, lo_hi):
    if lo_hi is None:
        return np.ones_like(coords, dtype=bool)
    lo, hi = lo_hi
    return (coords >= lo) & (coords <= hi)


def discrete_energy(state, medium, grid, x_range=None, y_range=None):
    """Quadratic energy E = sum u^2/(2b) dV + sum v^2/(2a) dV.

    v is taken at its own (t - dt/2) level; the staggering makes E oscillate
    within a bounded band rather than drift.  Optional coordinate ranges
    restrict the sums to cells and faces inside the given span.
    """
    dv = grid.cell_volume
    mx_c = _range_mask(grid.x_centers(), x_range)
    mx_f = _range_mask(grid.x_faces(), x_range)
    if grid.dim == 1:
        e = np.sum((state.u[mx_c] ** 2) / (2.0 * medium.b[mx_c]))
        e += np.sum((state.v_x[mx_f] ** 2) / (2.0 * medium.a_x[mx_f]))
        return float(e * dv)

    my_c = _range_mask(grid.y_centers(), y_range)
    my_f = _range_mask(grid.y_faces(), y_range)
    cell = np.outer(mx_c, my_c)
    face_x = np.outer(mx_f, my_c)
    face_y = np.outer(mx_c, my_f)
    e = np.sum((state.u ** 2 / (2.0 * medium.b))[cell])
    e += np.sum((state.v_x ** 2 / (2.0 * medium.a_x))[face_x])
    e += np.sum((state.v_y ** 2 / (2.0 * medium.a_y))[face_y])
    return float(e * dv)
