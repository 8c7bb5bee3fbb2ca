"""Bundled scenarios, one per verification criterion.

All presets use c = 1 and a unit carrier wavelength (omega = 2*pi) unless
stated otherwise, so "resolution" reads directly as cells per wavelength.
The same builders back the shipped scenarios/*.json files; a test pins the
two against each other.
"""

import math
from dataclasses import replace

from .grid import PERIODIC
from .pml import AbsorberSide, PmlSpec
from .probes import DftProbe, TimeSeriesProbe
from .scenario import (GridConfig, MediumConfig, OutputConfig, RunConfig,
                       ScenarioConfig, SourceConfig)
from .sources import ContinuousWave, GaussianPulse

TWO_PI = 2.0 * math.pi


def one_d_reflection(resolution=20):
    """Pulse against a half-wavelength quadratic layer on the right wall."""
    return ScenarioConfig(
        grid=GridConfig(dim=1, extent=(8.0,), resolution=float(resolution)),
        medium=MediumConfig(kind="uniform", a=1.0, b=1.0),
        absorbers=PmlSpec(x_hi=AbsorberSide(thickness=0.5, degree=2, r_target=1e-6)),
        sources=(SourceConfig(kind="point_additive", position=(2.0,),
                              waveform=GaussianPulse(omega0=TWO_PI, tau=1.0, delay=6.0)),),
        probes=(TimeSeriesProbe(name="mid", position=(4.0,)),),
        run=RunConfig(duration=24.0),
        outputs=OutputConfig(directory="out/1d-reflection"),
    )


# the quadratic default resolves to -(2+1)*ln(1e-6)/(2*0.5); a degree-0
# profile with the same integrated conductivity uses one third of that peak
STEP_SIGMA_MAX = -3.0 * math.log(1e-6) / (2.0 * 0.5) / 3.0


def step_vs_cubic(resolution=20):
    """The degree-0 (step-profile) partner of one_d_reflection at equal
    integrated conductivity."""
    base = one_d_reflection(resolution)
    return replace(
        base,
        absorbers=PmlSpec(x_hi=AbsorberSide(thickness=0.5, degree=0,
                                            sigma_max=STEP_SIGMA_MAX)),
        outputs=OutputConfig(directory="out/step-vs-cubic"),
    )


def fig2_decay(resolution=40):
    """CW wave entering a thick layer that fills the right half of the
    domain: the steady amplitude profile is flat before the layer and decays
    exponentially inside it."""
    return ScenarioConfig(
        grid=GridConfig(dim=1, extent=(10.0,), resolution=float(resolution)),
        medium=MediumConfig(kind="uniform", a=1.0, b=1.0),
        absorbers=PmlSpec(
            x_lo=AbsorberSide(thickness=0.5, degree=2, r_target=1e-6),
            x_hi=AbsorberSide(thickness=5.0, degree=2, r_target=1e-6)),
        sources=(SourceConfig(kind="point_additive", position=(1.0,),
                              waveform=ContinuousWave(omega=TWO_PI, ramp_time=3.0)),),
        probes=(DftProbe(name="profile", omegas=(TWO_PI,), axis="x",
                         span=(0.0, 10.0), t_start=16.0),),
        run=RunConfig(duration=24.0),
        outputs=OutputConfig(directory="out/fig2-decay"),
    )


def corner_pulse_2d(resolution=20):
    """Point pulse in a box absorbed on all four sides; exercises the corner
    overlap regions and long-time stability."""
    side = AbsorberSide(thickness=0.5, degree=2, r_target=1e-6)
    return ScenarioConfig(
        grid=GridConfig(dim=2, extent=(3.0, 3.0), resolution=float(resolution)),
        medium=MediumConfig(kind="uniform", a=1.0, b=1.0),
        absorbers=PmlSpec(x_lo=side, x_hi=side, y_lo=side, y_hi=side),
        sources=(SourceConfig(kind="point_additive", position=(1.5, 1.5),
                              waveform=GaussianPulse(omega0=TWO_PI, tau=0.75, delay=4.5)),),
        probes=(TimeSeriesProbe(name="center", position=(1.5, 1.5)),),
        run=RunConfig(duration=40.0),
        outputs=OutputConfig(directory="out/2d-corner-pulse"),
    )


def angle_sweep_base(resolution=20):
    """Periodic strip with CW line source; the source's phase gradient
    selects the plane-wave angle (snapped to the strip's admissible set).

    The layers are a full wavelength thick so the decay fit has enough
    samples at 20 cells per wavelength."""
    side = AbsorberSide(thickness=1.0, degree=2, r_target=1e-6)
    return ScenarioConfig(
        grid=GridConfig(dim=2, extent=(4.0, 30.0), resolution=float(resolution),
                        boundary_y=PERIODIC),
        medium=MediumConfig(kind="uniform", a=1.0, b=1.0),
        absorbers=PmlSpec(x_lo=side, x_hi=side),
        sources=(SourceConfig(kind="line_additive", x=1.25,
                              waveform=ContinuousWave(omega=TWO_PI, ramp_time=4.0)),),
        probes=(DftProbe(name="layer", omegas=(TWO_PI,), axis="x",
                         span=(3.0, 4.0), at=15.0, t_start=24.0),),
        run=RunConfig(duration=32.0),
        outputs=OutputConfig(directory="out/angle-sweep"),
    )


def waveguide_normal_exit(resolution=20):
    """Guided mode pulse leaving the domain through an x layer.

    The core is slower than the cladding (b 0.6 vs 1), giving one guided
    even mode at the carrier; the line source is weighted by that mode."""
    return ScenarioConfig(
        grid=GridConfig(dim=2, extent=(6.0, 4.0), resolution=float(resolution)),
        medium=MediumConfig(kind="waveguide", background=(1.0, 1.0),
                            core=(1.0, 0.6), core_y_span=(1.75, 2.25)),
        absorbers=PmlSpec(x_hi=AbsorberSide(thickness=0.5, degree=2, r_target=1e-6)),
        sources=(SourceConfig(kind="line_additive", x=1.0,
                              waveform=GaussianPulse(omega0=TWO_PI, tau=1.5, delay=9.0),
                              profile="waveguide_mode"),),
        probes=(TimeSeriesProbe(name="axis", position=(2.5, 2.0)),),
        run=RunConfig(duration=30.0),
        outputs=OutputConfig(directory="out/waveguide-normal-exit"),
    )


def evanescent_kappa(resolution=40, kappa_max=1.0, sigma_max=4.6):
    """Below-cutoff transverse mode decaying into a thick x layer.

    With k_y = 2*pi on a unit strip and a carrier of 0.8 * 2*pi the wave is
    evanescent (decay rate sqrt(k_y^2 - omega^2) ~= 3.770).  Conductivity
    leaves that rate alone; kappa_max > 1 accelerates it.  The layer uses a
    linear (degree 1) profile so the outer-half stretch is well above 1.
    The long pulse keeps the spectrum entirely below cutoff, so a whole-run
    DFT sees the clean evanescent response with no propagating residue."""
    omega = 0.8 * TWO_PI
    return ScenarioConfig(
        grid=GridConfig(dim=2, extent=(4.0, 1.0), resolution=float(resolution),
                        boundary_y=PERIODIC),
        medium=MediumConfig(kind="uniform", a=1.0, b=1.0),
        absorbers=PmlSpec(x_hi=AbsorberSide(thickness=2.0, degree=1,
                                            sigma_max=sigma_max, kappa_max=kappa_max)),
        sources=(SourceConfig(kind="line_additive", x=0.5,
                              waveform=GaussianPulse(omega0=omega, tau=5.0, delay=30.0),
                              phase_ky=TWO_PI),),
        probes=(DftProbe(name="profile", omegas=(omega,), axis="x",
                         span=(1.0, 4.0), at=0.0125, t_start=0.0),),
        run=RunConfig(duration=76.0),
        outputs=OutputConfig(directory="out/evanescent-kappa"),
    )


PRESETS = {
    "1d-reflection": one_d_reflection,
    "step-vs-cubic": step_vs_cubic,
    "fig2-decay": fig2_decay,
    "2d-corner-pulse": corner_pulse_2d,
    "angle-sweep": angle_sweep_base,
    "waveguide-normal-exit": waveguide_normal_exit,
    "evanescent-kappa": evanescent_kappa,
}
