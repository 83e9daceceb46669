"""Spectral amplitudes of single photons, PDC phase matching and filters.

Frequencies are angular, in rad/ps; times in ps; lengths in mm (crystals)
or nm (wavelengths).
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .errors import InvalidInputError, TruncationError
from .numerics import FrequencyGrid, fwhm, integrate

#: speed of light in nm/ps
SPEED_OF_LIGHT = 299_792.458
#: width coefficient matching the Gaussian phase-matching model to the sinc
GAMMA_PM = 0.193
#: signal and idler centre wavelength of the reference source (nm)
DEFAULT_SIGNAL_WAVELENGTH = 1554.0

LN2 = math.log(2.0)


def angfreq_from_wavelength(lambda0):
    """Angular frequency (rad/ps) of vacuum wavelength ``lambda0`` (nm)."""
    if not lambda0 > 0:
        raise InvalidInputError("wavelength must be positive")
    return 2.0 * math.pi * SPEED_OF_LIGHT / lambda0


def angfreq_from_wavelength_bandwidth(lambda0, dlambda):
    """Angular-frequency width (rad/ps) of a band ``dlambda`` wide at ``lambda0`` (nm).

    First-order conversion ``2 pi c dlambda / lambda0**2``; valid while
    ``dlambda << lambda0``. A zero bandwidth maps to zero.
    """
    if not lambda0 > 0:
        raise InvalidInputError(f"lambda0 must be positive, got {lambda0}")
    if not dlambda >= 0:
        raise InvalidInputError(f"dlambda must be non-negative, got {dlambda}")
    return 2.0 * math.pi * SPEED_OF_LIGHT * dlambda / lambda0 ** 2


@dataclass(frozen=True, eq=False)
class SpectralAmplitude:
    """Complex amplitude sampled on a :class:`FrequencyGrid`."""

    grid: FrequencyGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128)
        if v.shape != (self.grid.n_points,):
            raise InvalidInputError(
                f"{v.size} amplitude samples for a grid of {self.grid.n_points} points")
        object.__setattr__(self, "values", v)

    @property
    def intensity(self) -> np.ndarray:
        return self.values.real ** 2 + self.values.imag ** 2

    def norm(self) -> float:
        """L2 norm squared, ``integral |A|^2``, under the grid quadrature."""
        return float(integrate(self.intensity, self.grid.spacing))

    def normalized(self) -> SpectralAmplitude:
        n = self.norm()
        if not n > 0:
            raise InvalidInputError("cannot normalize a zero spectrum")
        return SpectralAmplitude(self.grid, self.values / math.sqrt(n))

    def amplitude_fwhm(self):
        """Full width at half maximum of ``|A|`` along the grid's frequencies."""
        return fwhm(self.grid.detuning, np.abs(self.values))


@dataclass(frozen=True)
class GaussianSource:
    """Transform-limited single photon with a Gaussian spectrum.

    ``sigma`` is the amplitude width parameter entering
    ``exp(-(w - omega0)**2 / (4 sigma**2))``.
    """

    omega0: float
    sigma: float

    def __post_init__(self):
        if not (np.isfinite(self.omega0) and self.omega0 >= 0):
            raise InvalidInputError("GaussianSource.omega0 must be finite and >= 0")
        if not (np.isfinite(self.sigma) and self.sigma > 0):
            raise InvalidInputError("GaussianSource.sigma must be positive")

    @classmethod
    def from_duration(cls, omega0, duration):
        """Source whose temporal intensity FWHM is ``duration`` (ps)."""
        if not duration > 0:
            raise InvalidInputError("duration must be positive")
        return cls(omega0=omega0, sigma=math.sqrt(2.0 * LN2) / duration)

    @property
    def duration(self) -> float:
        """Temporal FWHM of the photon, ``sqrt(2 ln 2) / sigma``."""
        return math.sqrt(2.0 * LN2) / self.sigma

    def grid(self, n_points=4097, span_factor=8.0) -> FrequencyGrid:
        return FrequencyGrid.for_sigma(self.sigma, self.omega0, n_points, span_factor)


def gaussian_amplitude(src: GaussianSource, grid: FrequencyGrid | None = None) -> SpectralAmplitude:
    """Sample ``(2 pi sigma^2)^(-1/4) exp(-(w - w0)^2 / (4 sigma^2))``.

    The prefactor alone normalizes ``integral |A|^2 dw`` to one; no numerical
    renormalization is applied. ``grid`` must be centred on ``src.omega0``
    and reach at least six widths either side.
    """
    if grid is None:
        grid = src.grid()
    if abs(grid.center - src.omega0) > 1e-9 * max(1.0, abs(src.omega0)):
        raise InvalidInputError(
            f"grid centre {grid.center} differs from source centre {src.omega0}")
    if grid.half_span < 6.0 * src.sigma:
        raise TruncationError(
            f"grid half-span {grid.half_span:g} rad/ps is below 6 sigma = {6 * src.sigma:g}")
    d = grid.detuning
    pref = (2.0 * math.pi * src.sigma ** 2) ** -0.25
    return SpectralAmplitude(grid, pref * np.exp(-d ** 2 / (4.0 * src.sigma ** 2)))


@dataclass(frozen=True)
class PdcProcess:
    """Low-gain, CW-pumped PDC in a waveguide of length ``length_L`` (mm).

    ``inv_gv_diff`` is ``1/vg_i - 1/vg_s`` in ps/mm. Only the first-order
    walk-off enters the spectra below.
    """

    length_L: float
    inv_gv_diff: float
    omega_s0: float = angfreq_from_wavelength(DEFAULT_SIGNAL_WAVELENGTH)
    omega_p0: float | None = None

    def __post_init__(self):
        if not (np.isfinite(self.length_L) and self.length_L > 0):
            raise InvalidInputError("PdcProcess.length_L must be positive")
        if not np.isfinite(self.inv_gv_diff):
            raise InvalidInputError("PdcProcess.inv_gv_diff must be finite")
        if not self.omega_s0 > 0:
            raise InvalidInputError("PdcProcess.omega_s0 must be positive")
        if self.omega_p0 is None:
            # frequency-degenerate by default
            object.__setattr__(self, "omega_p0", 2.0 * self.omega_s0)
        if not self.omega_p0 > self.omega_s0:
            raise InvalidInputError("PdcProcess.omega_p0 must exceed omega_s0")

    @classmethod
    def from_walkoff(cls, walkoff, length_L=19.0, **kw):
        """Process with a prescribed walk-off (ps) for a crystal of ``length_L`` mm."""
        return cls(length_L=length_L, inv_gv_diff=2.0 * walkoff / length_L, **kw)

    @property
    def walkoff(self) -> float:
        """Signal-idler walk-off at the crystal exit, ``(L/2)(1/vg_i - 1/vg_s)`` in ps."""
        return 0.5 * self.length_L * self.inv_gv_diff

    @property
    def omega_i0(self) -> float:
        return self.omega_p0 - self.omega_s0


def sinc_phasematching(pdc: PdcProcess, grid: FrequencyGrid, normalize=True) -> SpectralAmplitude:
    """``sinc(t0 W) exp(i t0 W)`` with ``t0`` the walk-off, on the detuning grid.

    Normalized to unit L2 norm unless ``normalize`` is false, in which case
    the value at zero detuning is exactly 1.
    """
    x = pdc.walkoff * grid.detuning
    # np.sinc(u) = sin(pi u) / (pi u)
    vals = np.sinc(x / math.pi) * np.exp(1j * x)
    amp = SpectralAmplitude(grid, vals)
    return amp.normalized() if normalize else amp


def gaussian_phasematching(pdc: PdcProcess, grid: FrequencyGrid, normalize=True) -> SpectralAmplitude:
    """Gaussian stand-in for the sinc: ``exp(-gamma t0^2 W^2 - i t0 W)``, gamma = 0.193."""
    t0 = pdc.walkoff
    d = grid.detuning
    amp = SpectralAmplitude(grid, np.exp(-GAMMA_PM * t0 ** 2 * d ** 2 - 1j * t0 * d))
    return amp.normalized() if normalize else amp


@dataclass(frozen=True)
class FilterSpec:
    """Gaussian bandpass with intensity FWHM ``fwhm_intensity`` (rad/ps)."""

    fwhm_intensity: float

    def __post_init__(self):
        if not (self.fwhm_intensity > 0):
            raise InvalidInputError("FilterSpec.fwhm_intensity must be positive")

    @classmethod
    def from_wavelength(cls, lambda0, dlambda):
        """Filter of width ``dlambda`` nm centred at ``lambda0`` nm."""
        return cls(angfreq_from_wavelength_bandwidth(lambda0, dlambda))


def gaussian_filter(f: FilterSpec, grid: FrequencyGrid) -> SpectralAmplitude:
    """Amplitude transmission ``exp(-2 ln2 W^2 / dW^2)``; peak 1, not normalized."""
    d = grid.detuning
    return SpectralAmplitude(grid, np.exp(-2.0 * LN2 * d ** 2 / f.fwhm_intensity ** 2))


@dataclass(frozen=True)
class EffectiveJsa:
    """Filtered Gaussian biphoton amplitude ``exp(-W^2/(4 sigma^2) - i t0 W)``."""

    sigma_eff: float
    walkoff: float

    def __post_init__(self):
        if not (np.isfinite(self.sigma_eff) and self.sigma_eff > 0):
            raise InvalidInputError("EffectiveJsa.sigma_eff must be positive and finite")
        if not np.isfinite(self.walkoff):
            raise InvalidInputError("EffectiveJsa.walkoff must be finite")

    @property
    def kappa(self) -> float:
        """Temporal width parameter ``1 / (2 sigma_eff)`` of both envelopes (ps)."""
        return 0.5 / self.sigma_eff

    @property
    def duration(self) -> float:
        """Photon temporal FWHM ``sqrt(2 ln 2) / sigma_eff`` (ps)."""
        return math.sqrt(2.0 * LN2) / self.sigma_eff

    def grid(self, n_points=4097, span_factor=8.0) -> FrequencyGrid:
        return FrequencyGrid.for_sigma(self.sigma_eff, 0.0, n_points, span_factor)

    def amplitude(self, grid: FrequencyGrid | None = None) -> SpectralAmplitude:
        """Sampled amplitude on a detuning grid, normalized to unit L2 norm."""
        if grid is None:
            grid = self.grid()
        d = grid.detuning
        vals = np.exp(-d ** 2 / (4.0 * self.sigma_eff ** 2) - 1j * self.walkoff * d)
        return SpectralAmplitude(grid, vals).normalized()


def effective_jsa(pdc: PdcProcess, f: FilterSpec | None = None) -> EffectiveJsa:
    """Gaussian phase matching times Gaussian filter, reduced to one width.

    ``1/sigma^2 = 4 gamma t0^2 + 8 ln2 / dW^2``. ``f=None`` means no filter.
    """
    t0 = pdc.walkoff
    inv_var = 4.0 * GAMMA_PM * t0 ** 2
    if f is not None:
        inv_var += 8.0 * LN2 / f.fwhm_intensity ** 2
    if not inv_var > 0:
        raise InvalidInputError("zero walk-off without a filter gives an unbounded spectrum")
    return EffectiveJsa(sigma_eff=1.0 / math.sqrt(inv_var), walkoff=t0)
