"""Singles and coincidence interferograms of the four lossless interferometers.

Every model maps a delay grid to an :class:`InterferogramTrace` and offers
two evaluation paths: ``"closed_form"`` (Gaussian-spectrum formulas) and
``"quadrature"`` (numerical integration over the sampled spectrum). On
Gaussian spectra the two agree to better than 1e-6.

Sign convention: a positive delay lengthens the signal arm. The HOM dip
then sits at ``+walkoff`` and the SU(1,1) envelope peak at ``+2 walkoff``.

``envelope_only=True`` drops the optical carrier (the fast phase
``omega0 * dt``), leaving the trace one would record while tracking a fixed
fringe phase; it lifts the fringe-sampling requirement so coarse grids can
be used.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from . import _accel
from .coherence import g1_from_intensity, g1_gaussian, hom_envelope, nl_envelope
from .errors import InvalidInputError, UndersampledError
from .numerics import FrequencyGrid, as_delays, inverse_fourier
from .spectra import EffectiveJsa, GaussianSource, SpectralAmplitude, gaussian_amplitude

EVALUATIONS = ("closed_form", "quadrature")
#: minimum delay samples per carrier period for fringe-resolved traces
SAMPLES_PER_FRINGE = 8
_TRACE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class InterferogramTrace:
    """Normalized count rates per delay.

    Singles of the pair-input interferometers are mean photon numbers and
    may equal one; coincidences are probabilities. Values must lie in
    ``[0, 1]`` up to 1e-9 of rounding.
    """

    delays: np.ndarray
    singles_a: np.ndarray
    singles_b: np.ndarray
    coincidences: np.ndarray

    def __post_init__(self):
        n = None
        for name in ("delays", "singles_a", "singles_b", "coincidences"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            if arr.ndim != 1:
                raise InvalidInputError(f"{name} must be 1-D")
            if n is None:
                n = arr.size
            elif arr.size != n:
                raise InvalidInputError(f"{name} has {arr.size} samples, expected {n}")
            if name != "delays" and arr.size and (
                    arr.min() < -_TRACE_TOL or arr.max() > 1.0 + _TRACE_TOL):
                raise InvalidInputError(f"{name} leaves [0, 1]")
            object.__setattr__(self, name, arr)

    def __len__(self):
        return self.delays.size


# -- configuration -------------------------------------------------------

@dataclass(frozen=True)
class LinearSinglePhoton:
    source: GaussianSource


@dataclass(frozen=True)
class LinearPhotonPair:
    omega0: float
    tau_joint: float

    def __post_init__(self):
        if not self.omega0 >= 0:
            raise InvalidInputError("omega0 must be non-negative")
        if not self.tau_joint > 0:
            raise InvalidInputError("tau_joint must be positive")


@dataclass(frozen=True)
class SemiNonlinearHom:
    jsa: EffectiveJsa


@dataclass(frozen=True)
class NonlinearSu11:
    jsa: EffectiveJsa
    phase_Phi: float
    omega_s0: float

    def __post_init__(self):
        _check_phase(self.phase_Phi)
        if not self.omega_s0 >= 0:
            raise InvalidInputError("omega_s0 must be non-negative")


@dataclass(frozen=True)
class InterferometerConfig:
    variant: LinearSinglePhoton | LinearPhotonPair | SemiNonlinearHom | NonlinearSu11
    evaluation: str = "closed_form"

    def __post_init__(self):
        _check_evaluation(self.evaluation)

    def simulate(self, delays, envelope_only=False, grid=None) -> InterferogramTrace:
        return simulate(self, delays, envelope_only=envelope_only, grid=grid)


def _check_phase(phi):
    if not (0.0 <= phi < 2.0 * math.pi):
        raise InvalidInputError(f"phase_Phi must lie in [0, 2 pi), got {phi}")


def _check_evaluation(evaluation):
    if evaluation not in EVALUATIONS:
        raise InvalidInputError(
            f"evaluation must be one of {EVALUATIONS}, got {evaluation!r}")


def _check_fringe_sampling(t, carrier):
    """Require SAMPLES_PER_FRINGE samples per period of ``cos(carrier * dt)``."""
    if carrier <= 0 or t.size < 2:
        return
    step = float(np.max(np.diff(t)))
    period = 2.0 * math.pi / carrier
    if step > period / SAMPLES_PER_FRINGE:
        raise UndersampledError(
            f"delay step {step:.4g} ps exceeds 1/{SAMPLES_PER_FRINGE} of the fringe "
            f"period {period:.4g} ps; refine the grid or use envelope_only")


def _grid_for(grid, sigma, center=0.0):
    return grid if grid is not None else FrequencyGrid.for_sigma(sigma, center)


# -- (a) Mach-Zehnder with one photon ------------------------------------

def linear_single_photon(src: GaussianSource, delays, evaluation="closed_form",
                         envelope_only=False, grid=None) -> InterferogramTrace:
    """Mach-Zehnder interferometer fed by a single photon in port a.

    ``n_a = 1/2 - 1/2 |g1| cos(w0 dt)`` and ``n_b = 1 - n_a``; no
    coincidences. The quadrature path integrates
    ``|A(w)|^2 |1 -+ exp(i w dt)|^2 / 4`` over the sampled spectrum.
    """
    _check_evaluation(evaluation)
    t = as_delays(delays)
    carrier = 0.0 if envelope_only else src.omega0
    _check_fringe_sampling(t, carrier)

    if evaluation == "closed_form":
        fringe = g1_gaussian(src, t) * np.cos(carrier * t)
    else:
        amp = gaussian_amplitude(src, _grid_for(grid, src.sigma, src.omega0))
        # |1 -+ e^{i w dt}|^2 / 4 = 1/2 -+ 1/2 Re e^{i w dt}, w = w0 + W
        fringe = np.real(np.exp(1j * carrier * t) * g1_from_intensity(amp.intensity, amp.grid, t))
    n_a = 0.5 - 0.5 * fringe
    n_b = 0.5 + 0.5 * fringe
    return InterferogramTrace(t, n_a, n_b, np.zeros_like(t))


# -- (b) Mach-Zehnder with a photon pair (NOON state) ---------------------

def linear_photon_pair(omega0, tau_joint, delays, evaluation="closed_form",
                       envelope_only=False, grid=None) -> InterferogramTrace:
    """Mach-Zehnder fed by two indistinguishable photons.

    Singles are the constant mean photon number 1; coincidences follow
    ``1/2 + 1/2 exp(-dt^2/tau_joint^2) cos(2 w0 dt)``. The quadrature path
    integrates the two-photon phase ``exp(i (2 w0 + W) dt)`` over a Gaussian
    sum-frequency distribution whose transform is ``exp(-dt^2/tau_joint^2)``.
    """
    cfg = LinearPhotonPair(omega0, tau_joint)
    _check_evaluation(evaluation)
    t = as_delays(delays)
    carrier = 0.0 if envelope_only else 2.0 * cfg.omega0
    _check_fringe_sampling(t, carrier)

    if evaluation == "closed_form":
        fringe = np.exp(-t ** 2 / cfg.tau_joint ** 2) * np.cos(carrier * t)
    else:
        # exp(-W^2 / (2 s^2)) transforms to exp(-s^2 dt^2 / 2)
        s = math.sqrt(2.0) / cfg.tau_joint
        g = _grid_for(grid, s)
        dist = np.exp(-g.detuning ** 2 / (2.0 * s ** 2))
        fringe = np.real(np.exp(1j * carrier * t) * g1_from_intensity(dist, g, t))
    ones = np.ones_like(t)
    return InterferogramTrace(t, ones, ones.copy(), 0.5 + 0.5 * fringe)


# -- (c) PDC + beam splitter: HOM ----------------------------------------

def hom_semi_nonlinear(jsa: EffectiveJsa, delays, evaluation="closed_form",
                       envelope_only=False, grid=None,
                       spectrum: SpectralAmplitude | None = None) -> InterferogramTrace:
    """HOM interference of a PDC pair at a beam splitter.

    Singles are constant 1. Coincidences are ``1/2 - 1/2 HOM(dt)`` with the
    Gaussian dip ``HOM`` centred at the walk-off. The quadrature path
    evaluates ``1/2 - 1/2 integral |phi|^2 exp(2 i W (dt - t0)) dW`` on the
    effective JSA, or on ``spectrum`` when a sampled biphoton amplitude
    (e.g. exact sinc times filter) is supplied. There is no optical carrier,
    so ``envelope_only`` changes nothing.
    """
    _check_evaluation(evaluation)
    t = as_delays(delays)
    if evaluation == "closed_form":
        dip = hom_envelope(jsa, t)
    else:
        amp = spectrum if spectrum is not None else jsa.amplitude(_grid_for(grid, jsa.sigma_eff))
        dip = np.real(g1_from_intensity(amp.intensity, amp.grid, 2.0 * (t - jsa.walkoff)))
    ones = np.ones_like(t)
    return InterferogramTrace(t, ones, ones.copy(), 0.5 - 0.5 * dip)


# -- (d) PDC + PDC: SU(1,1) ----------------------------------------------

def build_two_stage_jsa(jsa: EffectiveJsa, phase_Phi, omega_s0, dt,
                        grid: FrequencyGrid | None = None,
                        spectrum: SpectralAmplitude | None = None) -> SpectralAmplitude:
    """Biphoton amplitude after two identical PDC stages, un-normalized.

    ``phi_N(W) = phi(W) [1 + exp(i theta)]`` with
    ``theta = -2 t0 W + dt (omega_s0 + W) + Phi``. The first term is the
    first-order phase mismatch across the crystal, with its sign fixed so
    that rephasing happens at ``dt = +2 t0``; the second is the phase the
    signal photon picks up in the delay line.
    """
    amp = spectrum if spectrum is not None else jsa.amplitude(_grid_for(grid, jsa.sigma_eff))
    w = amp.grid.detuning
    theta = -2.0 * jsa.walkoff * w + dt * (omega_s0 + w) + phase_Phi
    return SpectralAmplitude(amp.grid, amp.values * (1.0 + np.exp(1j * theta)))


def nonlinear_su11(jsa: EffectiveJsa, phase_Phi, omega_s0, delays, evaluation="closed_form",
                   envelope_only=False, grid=None,
                   spectrum: SpectralAmplitude | None = None) -> InterferogramTrace:
    """SU(1,1) interferometer of two PDC stages with the signal delayed.

    All three channels equal ``1/2 + 1/2 |h(dt)| cos(omega_s0 dt + Phi)``
    and are returned as the same values. The quadrature path integrates
    ``|phi_N|^2`` of :func:`build_two_stage_jsa` at every delay and divides
    by ``4 integral |phi|^2`` so that the interference-free level is 1/2.
    """
    cfg = NonlinearSu11(jsa, phase_Phi, omega_s0)
    _check_evaluation(evaluation)
    t = as_delays(delays)
    carrier = 0.0 if envelope_only else cfg.omega_s0
    _check_fringe_sampling(t, carrier)

    if evaluation == "closed_form":
        rate = 0.5 + 0.5 * nl_envelope(jsa, t) * np.cos(carrier * t + phase_Phi)
    else:
        amp = spectrum if spectrum is not None else jsa.amplitude(_grid_for(grid, jsa.sigma_eff))
        g = amp.grid
        power = _accel.two_stage_power(amp.values, g.detuning, g.weights, t,
                                       jsa.walkoff, carrier, phase_Phi)
        rate = power / (4.0 * amp.norm())
    return InterferogramTrace(t, rate, rate.copy(), rate.copy())


def simulate(config: InterferometerConfig, delays, envelope_only=False,
             grid=None) -> InterferogramTrace:
    """Run the model selected by ``config.variant``."""
    v, ev = config.variant, config.evaluation
    if isinstance(v, LinearSinglePhoton):
        return linear_single_photon(v.source, delays, ev, envelope_only, grid)
    if isinstance(v, LinearPhotonPair):
        return linear_photon_pair(v.omega0, v.tau_joint, delays, ev, envelope_only, grid)
    if isinstance(v, SemiNonlinearHom):
        return hom_semi_nonlinear(v.jsa, delays, ev, envelope_only, grid)
    if isinstance(v, NonlinearSu11):
        return nonlinear_su11(v.jsa, v.phase_Phi, v.omega_s0, delays, ev, envelope_only, grid)
    raise InvalidInputError(f"unknown interferometer variant {type(v).__name__}")
