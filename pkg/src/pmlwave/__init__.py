"""pmlwave: staggered-grid FDTD for the first-order scalar wave system in
1d/2d with stretched-coordinate absorbing layers, plus the measurement
harness that quantifies how reflectionless the layers are."""

__version__ = "0.1.0"

from .analysis import (DecayFit, ReflectionResult, SweepPoint, angle_sweep,
                       cone_angle_bound, fit_decay_rate, measure_reflection,
                       resolution_convergence, snap_angle, steady_decay_slope,
                       write_sweep_csv)
from .errors import (ConfigError, InstabilityError, InvariantError,
                     MeasurementError, MissingFieldError, UnknownKeyError)
from .fields import FieldState, discrete_energy
from .grid import HARD_WALL, PERIODIC, Grid, build_grid, cfl_dt
from .medium import Medium
from .pml import (NONPML_SCALAR, PML, AbsorberSide, PmlCoefficients, PmlSpec,
                  attenuation_factor, build_pml_maps, evanescent_factor,
                  sigma_max_for_round_trip, sigma_profile, stretch_factor)
from .probes import (DftProbe, LineProfileProbe, TimeSeriesProbe, interpolate,
                     make_recorder, probe_points)
from .scenario import (RunManifest, ScenarioConfig, emit_field_snapshot,
                       parse_config, read_field_snapshot, run_scenario,
                       serialize_config, simulate)
from .sources import (ContinuousWave, GaussianPulse, LineSource, PointSource,
                      apply_source, waveguide_mode)
from .stepping import step_nonpml_absorber, step_plain, step_pml

__all__ = [name for name in dir() if not name.startswith("_")]
