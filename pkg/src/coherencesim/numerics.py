"""Uniform grids, composite quadrature and direct Fourier sums.

Units are ps for time and rad/ps for angular frequency throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _accel
from .errors import InvalidInputError

#: default number of frequency samples
DEFAULT_FREQ_POINTS = 4097
#: default grid half-span in units of the widest spectral sigma
DEFAULT_SPAN_FACTOR = 8.0


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform angular-frequency grid ``center - half_span ... center + half_span``.

    ``n_points`` is odd so that the zero detuning is sampled exactly and the
    composite Simpson rule applies.
    """

    center: float
    half_span: float
    n_points: int = DEFAULT_FREQ_POINTS

    def __post_init__(self):
        if not np.isfinite(self.center):
            raise InvalidInputError("FrequencyGrid.center must be finite")
        if not (np.isfinite(self.half_span) and self.half_span > 0):
            raise InvalidInputError("FrequencyGrid.half_span must be positive")
        if int(self.n_points) != self.n_points or self.n_points < 16 or self.n_points % 2 == 0:
            raise InvalidInputError(
                f"FrequencyGrid.n_points must be an odd integer >= 17, got {self.n_points}")

    @classmethod
    def for_sigma(cls, sigma, center=0.0, n_points=DEFAULT_FREQ_POINTS,
                  span_factor=DEFAULT_SPAN_FACTOR):
        """Grid spanning ``span_factor`` widths ``sigma`` either side of ``center``."""
        if not sigma > 0:
            raise InvalidInputError("sigma must be positive")
        return cls(center=float(center), half_span=span_factor * float(sigma),
                   n_points=int(n_points))

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_span / (self.n_points - 1)

    @property
    def detuning(self) -> np.ndarray:
        """Sample offsets from ``center``; the middle sample is exactly 0."""
        return np.linspace(-self.half_span, self.half_span, self.n_points)

    @property
    def omega(self) -> np.ndarray:
        """Absolute angular frequencies of the samples."""
        return self.center + self.detuning

    @property
    def weights(self) -> np.ndarray:
        return quadrature_weights(self.n_points, self.spacing)

    def refined(self, factor=2) -> FrequencyGrid:
        """Same span with the spacing divided by ``factor``."""
        return FrequencyGrid(self.center, self.half_span, (self.n_points - 1) * factor + 1)


@dataclass(frozen=True)
class DelayGrid:
    """Uniform grid of delays (ps) from ``start`` to ``stop`` inclusive."""

    start: float
    stop: float
    n_points: int

    def __post_init__(self):
        if not (np.isfinite(self.start) and np.isfinite(self.stop)):
            raise InvalidInputError("DelayGrid bounds must be finite")
        if not self.start < self.stop:
            raise InvalidInputError(
                f"DelayGrid needs start < stop, got {self.start} >= {self.stop}")
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise InvalidInputError("DelayGrid.n_points must be an integer >= 2")

    @property
    def spacing(self) -> float:
        return (self.stop - self.start) / (self.n_points - 1)

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, int(self.n_points))

    def __len__(self):
        return int(self.n_points)


def as_delays(delays) -> np.ndarray:
    """Delay samples from a :class:`DelayGrid` or a 1-D array-like."""
    if isinstance(delays, DelayGrid):
        return delays.values
    arr = np.asarray(delays, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidInputError("delays must be a DelayGrid or a non-empty 1-D sequence")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("delays must be finite")
    return arr


def quadrature_weights(n, spacing):
    """Composite Simpson weights for odd ``n``, trapezoid weights for even ``n``."""
    if n < 2:
        raise InvalidInputError("quadrature needs at least 2 samples")
    if not spacing > 0:
        raise InvalidInputError("spacing must be positive")
    if n % 2 == 1 and n >= 3:
        w = np.full(n, 2.0)
        w[1::2] = 4.0
        w[0] = w[-1] = 1.0
        return w * (spacing / 3.0)
    w = np.ones(n)
    w[0] = w[-1] = 0.5
    return w * spacing


def integrate(samples, spacing):
    """Integral of uniformly spaced samples.

    Composite Simpson for an odd number of samples, trapezoid for an even
    number.

    Parameters
    ----------
    samples : array_like
        Integrand values (real or complex) at equally spaced abscissae.
    spacing : float
        Distance between neighbouring abscissae.

    Returns
    -------
    float or complex
    """
    y = np.asarray(samples)
    if y.ndim != 1 or y.size < 2:
        raise InvalidInputError("integrate needs a 1-D sequence of at least 2 samples")
    return quadrature_weights(y.size, spacing) @ y


def inverse_fourier(samples, grid: FrequencyGrid, times):
    """``F(t) = integral f(W) exp(i W t) dW`` over the detuning ``W`` of ``grid``.

    Evaluated by the same quadrature as :func:`integrate`, directly at each
    requested time, so the time samples are unconstrained by the frequency
    sampling. The carrier ``exp(i * grid.center * t)`` is not included.
    """
    f = np.asarray(samples)
    if f.ndim != 1 or f.size != grid.n_points:
        raise InvalidInputError(
            f"got {f.size} samples for a grid of {grid.n_points} points")
    t = as_delays(times)
    coeffs = grid.weights * f
    out = _accel.weighted_dft(coeffs, grid.detuning, t)
    zero = t == 0.0
    if np.any(zero):
        # exp(0) == 1: reuse the plain quadrature sum bit for bit
        out[zero] = integrate(f.astype(np.complex128), grid.spacing)
    return out


def half_max_crossings(x, y, peak_index=None, fraction=0.5):
    """Interpolated abscissae where ``y`` falls to ``fraction`` of its peak.

    Walks outward from ``peak_index`` (default: argmax of ``y``) and linearly
    interpolates between the bracketing samples. Returns ``(left, right)``;
    either is ``None`` when ``y`` never drops below the level on that side.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    i0 = int(np.argmax(y)) if peak_index is None else int(peak_index)
    level = fraction * y[i0]

    left = None
    below = np.nonzero(y[:i0] < level)[0]
    if below.size:
        j = below[-1]
        left = x[j] + (level - y[j]) * (x[j + 1] - x[j]) / (y[j + 1] - y[j])

    right = None
    below = np.nonzero(y[i0 + 1:] < level)[0]
    if below.size:
        j = i0 + below[0]
        right = x[j] + (level - y[j]) * (x[j + 1] - x[j]) / (y[j + 1] - y[j])
    return left, right


def fwhm(x, y, peak_index=None):
    """Full width at half maximum of a sampled single-peaked profile, or ``None``."""
    left, right = half_max_crossings(x, y, peak_index)
    if left is None or right is None:
        return None
    return right - left
