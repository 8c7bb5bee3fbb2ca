"""Material parameters a(x, y) and b(x, y) sampled on the staggered grid.

The local phase speed is c = sqrt(a*b).  a multiplies grad(u) in the flux
update, so it is sampled at the v locations (one array per component); b
multiplies div(v) in the u update and is sampled at cell centers.  Samples
are taken pointwise, with no averaging across material discontinuities.
"""

from dataclasses import dataclass

import numpy as np

from .grid import PERIODIC


def _sample(f, x, y=None):
    """Evaluate a scalar or callable on coordinate arrays, fully materialized."""
    if callable(f):
        vals = np.asarray(f(x) if y is None else f(x, y), dtype=float)
    else:
        vals = np.asarray(float(f))
    shape = x.shape if y is None else np.broadcast_shapes(x.shape, y.shape)
    return np.ascontiguousarray(np.broadcast_to(vals, shape), dtype=float)


@dataclass
class Medium:
    b: np.ndarray
    a_x: np.ndarray
    a_y: np.ndarray | None = None

    def __post_init__(self):
        for name in ("b", "a_x", "a_y"):
            arr = getattr(self, name)
            if arr is not None and not np.all(arr > 0):
                raise ValueError(f"medium field {name} must be strictly positive")

    @classmethod
    def from_functions(cls, grid, a, b):
        """Sample a and b (scalars or callables of the coordinates)."""
        if grid.dim == 1:
            return cls(b=_sample(b, grid.x_centers()),
                       a_x=_sample(a, grid.x_faces()))
        xc = grid.x_centers()[:, None]
        yc = grid.y_centers()[None, :]
        xf = grid.x_faces()[:, None]
        yf = grid.y_faces()[None, :]
        return cls(b=_sample(b, xc, yc),
                   a_x=_sample(a, xf, yc),
                   a_y=_sample(a, xc, yf))

    @classmethod
    def uniform(cls, grid, a=1.0, b=1.0):
        return cls.from_functions(grid, float(a), float(b))

    @classmethod
    def waveguide(cls, grid, clad_a, clad_b, core_a, core_b, core_y_span):
        """x-invariant medium: a core strip in y embedded in a cladding."""
        if grid.dim != 2:
            raise ValueError("waveguide media require a 2d grid")
        y0, y1 = core_y_span

        def pick(clad, core):
            def f(x, y):
                return np.where((y >= y0) & (y < y1), core, clad)
            return f

        return cls.from_functions(grid, pick(clad_a, core_a), pick(clad_b, core_b))

    @classmethod
    def rectangles(cls, grid, background, rects):
        """Piecewise-constant medium: ``rects`` override the background.

        Each entry is (a, b, x_span, y_span); spans are half-open [lo, hi)
        and later rectangles win.  y_span is ignored in 1d.
        """
        bg_a, bg_b = background

        def field(idx):
            def f(x, y=None):
                vals = np.full(np.broadcast(x, y if y is not None else x).shape,
                               float(background[idx]))
                for rect in rects:
                    inside = (x >= rect[2][0]) & (x < rect[2][1])
                    if y is not None and rect[3] is not None:
                        inside = inside & (y >= rect[3][0]) & (y < rect[3][1])
                    vals = np.where(inside, float(rect[idx]), vals)
                return vals
            return f

        return cls.from_functions(grid, field(0), field(1))

    # -- collocated speed bounds -------------------------------------------
    def _c_collocated(self, grid):
        ax_c = 0.5 * (self.a_x[:-1] + self.a_x[1:])
        speeds = [np.sqrt(ax_c * self.b)]
        if grid.dim == 2:
            if grid.boundary_y == PERIODIC:
                ay_c = 0.5 * (self.a_y + np.roll(self.a_y, 1, axis=1))
            else:
                ay_c = 0.5 * (self.a_y[:, :-1] + self.a_y[:, 1:])
            speeds.append(np.sqrt(ay_c * self.b))
        return speeds

    def c_max(self, grid):
        return max(float(s.max()) for s in self._c_collocated(grid))

    def c_min(self, grid):
        return min(float(s.min()) for s in self._c_collocated(grid))
