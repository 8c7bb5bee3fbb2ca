"""Rectilinear staggered grids for 1d and 2d wave simulation.

The scalar field u lives at cell centers and integer time levels; the flux
field v lives at face centers and half-integer time levels (v_x on x faces
at (i+1/2, j), v_y on y faces at (i, j+1/2)).  x boundaries are always hard
walls (ghost cells with u = 0 beyond the outer faces); the y boundary is
either a hard wall or periodic.
"""

from dataclasses import dataclass

import numpy as np

HARD_WALL = "hard_wall"
PERIODIC = "periodic"


@dataclass(frozen=True)
class Grid:
    """Uniform staggered grid.

    ``origin`` is the coordinate of the center of cell (0, 0); the physical
    domain therefore spans ``[origin - d/2, origin - d/2 + n*d]`` per axis,
    with the outermost v faces sitting exactly on the domain edges.
    """

    dim: int
    nx: int
    dx: float
    ny: int | None = None
    dy: float | None = None
    origin: tuple = (0.0,)
    boundary_y: str = HARD_WALL

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError(f"dim must be 1 or 2, got {self.dim}")
        if self.nx < 4:
            raise ValueError(f"nx must be >= 4, got {self.nx}")
        if self.dx <= 0:
            raise ValueError(f"dx must be positive, got {self.dx}")
        if self.dim == 2:
            if self.ny is None or self.ny < 4:
                raise ValueError(f"ny must be >= 4 in 2d, got {self.ny}")
            if self.dy is None or self.dy <= 0:
                raise ValueError(f"dy must be positive, got {self.dy}")
            if self.boundary_y not in (HARD_WALL, PERIODIC):
                raise ValueError(f"unknown boundary_y {self.boundary_y!r}")
            if len(self.origin) != 2:
                raise ValueError("origin must have two entries in 2d")
        elif len(self.origin) != 1:
            raise ValueError("origin must have one entry in 1d")

    # -- extents ----------------------------------------------------------
    @property
    def extent_x(self):
        return self.nx * self.dx

    @property
    def extent_y(self):
        return None if self.dim == 1 else self.ny * self.dy

    @property
    def x_lo_edge(self):
        return self.origin[0] - 0.5 * self.dx

    @property
    def x_hi_edge(self):
        return self.x_lo_edge + self.extent_x

    @property
    def y_lo_edge(self):
        return None if self.dim == 1 else self.origin[1] - 0.5 * self.dy

    @property
    def y_hi_edge(self):
        return None if self.dim == 1 else self.y_lo_edge + self.extent_y

    # -- sample coordinates -------------------------------------------------
    def x_centers(self):
        return self.origin[0] + self.dx * np.arange(self.nx)

    def x_faces(self):
        """Positions of v_x samples: all nx+1 faces, walls included."""
        return self.x_lo_edge + self.dx * np.arange(self.nx + 1)

    def y_centers(self):
        return self.origin[1] + self.dy * np.arange(self.ny)

    def y_faces(self):
        """Positions of v_y samples; layout depends on the y boundary.

        Hard wall: ny+1 faces, v_y[:, k] sits between cells k-1 and k.
        Periodic: ny faces, v_y[:, k] sits between cells k and k+1 (wrapping).
        """
        if self.boundary_y == PERIODIC:
            return self.y_lo_edge + self.dy * (np.arange(self.ny) + 1.0)
        return self.y_lo_edge + self.dy * np.arange(self.ny + 1)

    @property
    def n_y_faces(self):
        if self.dim == 1:
            return None
        return self.ny if self.boundary_y == PERIODIC else self.ny + 1

    @property
    def cell_volume(self):
        return self.dx if self.dim == 1 else self.dx * self.dy


def build_grid(extent, resolution, boundary_y=HARD_WALL, x_min=0.0, y_min=0.0):
    """Build a grid covering ``extent`` at ``resolution`` cells per unit length.

    ``extent`` is a scalar (1d) or a pair (2d).  Cell counts are rounded,
    then the spacing is recomputed so the extent is covered exactly.
    """
    if np.isscalar(extent):
        extent = (float(extent),)
    extent = tuple(float(e) for e in extent)
    if len(extent) not in (1, 2):
        raise ValueError("extent must be a scalar or a pair")
    if resolution <= 0:
        raise ValueError(f"resolution must be positive, got {resolution}")
    if any(e <= 0 for e in extent):
        raise ValueError(f"extents must be positive, got {extent}")

    nx = int(round(extent[0] * resolution))
    if nx < 4:
        raise ValueError(f"nx={nx} < 4; enlarge the domain or the resolution")
    dx = extent[0] / nx
    if len(extent) == 1:
        return Grid(dim=1, nx=nx, dx=dx, origin=(x_min + 0.5 * dx,))

    ny = int(round(extent[1] * resolution))
    if ny < 4:
        raise ValueError(f"ny={ny} < 4; enlarge the domain or the resolution")
    dy = extent[1] / ny
    return Grid(dim=2, nx=nx, dx=dx, ny=ny, dy=dy,
                origin=(x_min + 0.5 * dx, y_min + 0.5 * dy),
                boundary_y=boundary_y)


def cfl_dt(grid, medium, safety=0.5):
    """Stable leap-frog time step: safety * min(dx, dy) / (c_max * sqrt(dim))."""
    if not 0.0 < safety <= 1.0:
        raise ValueError(f"safety must lie in (0, 1], got {safety}")
    d_min = grid.dx if grid.dim == 1 else min(grid.dx, grid.dy)
    return safety * d_min / (medium.c_max(grid) * np.sqrt(grid.dim))
