"""First-order coherence, interference envelopes and trace statistics."""

from __future__ import annotations

from dataclasses import dataclass, asdict
import math

import numpy as np

from .errors import InvalidInputError
from .numerics import FrequencyGrid, as_delays, fwhm, inverse_fourier
from .spectra import LN2, EffectiveJsa, GaussianSource, SpectralAmplitude, gaussian_amplitude

CHANNELS = ("singles_a", "singles_b", "coincidences")


def g1(source, delays, grid: FrequencyGrid | None = None) -> np.ndarray:
    """Degree of first-order coherence ``G(dt) / G(0)``.

    ``G`` is the inverse Fourier transform of the intensity spectrum,
    evaluated by quadrature. The result is expressed relative to the carrier
    at the grid centre, i.e. the fast factor ``exp(i omega0 dt)`` is left
    out, so for a symmetric spectrum it is real.

    Parameters
    ----------
    source : GaussianSource or SpectralAmplitude
        A Gaussian photon (sampled on ``grid``, or on its default grid) or an
        already sampled amplitude whose ``|A|^2`` is the intensity spectrum.
    delays : DelayGrid or array_like
    grid : FrequencyGrid, optional
        Only used for a :class:`GaussianSource`.
    """
    if isinstance(source, GaussianSource):
        amp = gaussian_amplitude(source, grid)
    elif isinstance(source, SpectralAmplitude):
        amp = source
    else:
        raise InvalidInputError("g1 needs a GaussianSource or a SpectralAmplitude")
    return g1_from_intensity(amp.intensity, amp.grid, delays)


def g1_from_intensity(intensity, grid: FrequencyGrid, delays) -> np.ndarray:
    """:func:`g1` for a sampled intensity spectrum on ``grid``."""
    s = np.asarray(intensity, dtype=np.float64)
    t = as_delays(delays)
    g0 = inverse_fourier(s, grid, np.zeros(1))[0]
    if not abs(g0) > 0:
        raise InvalidInputError("intensity spectrum has zero norm")
    return inverse_fourier(s, grid, t) / g0


def g1_gaussian(src: GaussianSource, delays) -> np.ndarray:
    """Closed form ``exp(-ln2 dt^2 / duration^2)`` for a Gaussian photon."""
    t = as_delays(delays)
    return np.exp(-LN2 * t ** 2 / src.duration ** 2)


def hom_envelope(jsa: EffectiveJsa, delays) -> np.ndarray:
    """``exp(-(dt - t0)^2 / (2 kappa^2)) ``, the HOM dip depth profile."""
    t = as_delays(delays)
    return np.exp(-(t - jsa.walkoff) ** 2 / (2.0 * jsa.kappa ** 2))


def nl_envelope(jsa: EffectiveJsa, delays) -> np.ndarray:
    """``exp(-(dt - 2 t0)^2 / (8 kappa^2))``, the SU(1,1) fringe envelope."""
    t = as_delays(delays)
    return np.exp(-(t - 2.0 * jsa.walkoff) ** 2 / (8.0 * jsa.kappa ** 2))


def hom_fwhm(jsa: EffectiveJsa) -> float:
    return 2.0 * jsa.kappa * math.sqrt(2.0 * LN2)


def nl_fwhm(jsa: EffectiveJsa) -> float:
    return 2.0 * jsa.kappa * math.sqrt(8.0 * LN2)


@dataclass(frozen=True)
class TraceSummary:
    """Scalar description of one interferogram channel.

    ``fwhm``, ``extremum_position`` and ``extremum_kind`` refer to the
    envelope (fringe carrier removed); ``fringe_period`` is ``None`` when no
    carrier is detected. A flat trace yields visibility 0 and ``None``
    elsewhere.
    """

    visibility: float
    fwhm: float | None
    extremum_position: float | None
    fringe_period: float | None
    extremum_kind: str | None

    @property
    def degenerate(self) -> bool:
        return self.extremum_kind is None

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True, eq=False)
class Envelope:
    """Local modulation depth of a trace around its slowly varying baseline."""

    delays: np.ndarray
    values: np.ndarray
    kind: str
    carrier_frequency: float | None  # cycles per ps

    @property
    def fringe_period(self):
        if self.carrier_frequency is None:
            return None
        return 1.0 / self.carrier_frequency


def _uniform_spacing(t):
    if t.size < 3:
        raise InvalidInputError("trace analysis needs at least 3 samples")
    dt = np.diff(t)
    h = (t[-1] - t[0]) / (t.size - 1)
    if not h > 0 or np.max(np.abs(dt - h)) > 1e-6 * h:
        raise InvalidInputError("trace delays must be increasing and uniformly spaced")
    return h


def _local_iq_fit(t, x, freq, periods=2.0):
    """Sliding least-squares fit of ``b + p cos(wt) + q sin(wt)``.

    Each sample uses a window of about ``periods`` carrier periods, shifted
    inward near the ends so it never leaves the trace. Returns the baseline
    ``b`` and fringe amplitude ``hypot(p, q)`` per sample.
    """
    n = x.size
    h = t[1] - t[0]
    k = int(min(n, max(5, round(periods / (freq * h)))))
    if k % 2 == 0:
        # odd windows stay centred on their sample
        k = k + 1 if k < n else k - 1
    lo = np.clip(np.arange(n) - k // 2, 0, n - k)
    ph = 2.0 * np.pi * freq * (t - t[0])
    c, s = np.cos(ph), np.sin(ph)
    cols = np.stack([np.ones(n), c, s, c * c, s * s, c * s, x, x * c, x * s])
    csum = np.concatenate([np.zeros((9, 1)), np.cumsum(cols, axis=1)], axis=1)
    m = csum[:, lo + k] - csum[:, lo]
    one, sc, ss, scc, sss, scs, sx, sxc, sxs = m
    a = np.empty((n, 3, 3))
    a[:, 0] = np.stack([one, sc, ss], axis=1)
    a[:, 1] = np.stack([sc, scc, scs], axis=1)
    a[:, 2] = np.stack([ss, scs, sss], axis=1)
    rhs = np.stack([sx, sxc, sxs], axis=1)[..., None]
    beta = np.linalg.solve(a, rhs)[..., 0]
    return beta[:, 0], np.hypot(beta[:, 1], beta[:, 2])


def dominant_frequency(delays, values, min_bin=4, snr=10.0):
    """Carrier frequency (cycles/ps) of a fringe pattern, or ``None``.

    The strongest non-DC bin of the mean-removed spectrum counts as a
    carrier when it lies at least ``min_bin`` bins above DC and its power
    exceeds ``snr`` times the median bin power. The estimate is refined on a
    Hann-windowed, zero-padded spectrum by log-parabolic interpolation.
    """
    t = as_delays(delays)
    x = np.asarray(values, dtype=np.float64)
    h = _uniform_spacing(t)
    d = x - x.mean()
    power = np.abs(np.fft.rfft(d)) ** 2
    k = 1 + int(np.argmax(power[1:]))
    noise = float(np.median(power[1:]))
    if k < min_bin or not power[k] > snr * noise:
        return None

    pad = 8
    nfft = pad * x.size
    mag = np.abs(np.fft.rfft(d * np.hanning(x.size), nfft))
    lo, hi = max(1, pad * (k - 2)), min(mag.size - 1, pad * (k + 2) + 1)
    j = lo + int(np.argmax(mag[lo:hi]))
    shift = 0.0
    if 0 < j < mag.size - 1 and np.all(mag[j - 1:j + 2] > 0):
        a, b, c = np.log(mag[j - 1:j + 2])
        denom = a - 2.0 * b + c
        if denom < 0:
            shift = float(np.clip(0.5 * (a - c) / denom, -0.5, 0.5))
    return float((j + shift) / (nfft * h))


def extract_envelope(delays, values) -> Envelope:
    """Envelope of a trace as local modulation depth.

    With a fringe carrier the trace is demodulated at the dominant
    frequency by a sliding in-phase/quadrature fit over two carrier periods:
    ``depth = fringe amplitude / local baseline``. Without
    one, the baseline is taken from the two ends of the trace (which must
    reach the flat wings) and ``depth = |x - base| / base`` on the side of
    the larger excursion.
    """
    t = as_delays(delays)
    x = np.asarray(values, dtype=np.float64)
    _uniform_spacing(t)
    f0 = dominant_frequency(t, x)
    if f0 is not None:
        base, amp = _local_iq_fit(t, x, f0)
        scale = np.where(np.abs(base) > 1e-12, np.abs(base), 1.0)
        return Envelope(t, amp / scale, "peak", f0)

    m = max(1, x.size // 50)
    base = 0.5 * (np.median(x[:m]) + np.median(x[-m:]))
    kind = "dip" if base - x.min() > x.max() - base else "peak"
    prof = base - x if kind == "dip" else x - base
    if abs(base) > 1e-12:
        prof = prof / abs(base)
    return Envelope(t, prof, kind, None)


def _fringe_extrema(t, x, freq):
    """Global extrema of a fringe trace, including those between samples.

    A coarsely sampled carrier rarely lands on its true crests, so the
    sampled extrema are merged with ``base +- amp`` from the local fit.
    """
    base, amp = _local_iq_fit(t, x, freq)
    hi = max(float(x.max()), float(np.max(base + amp)))
    lo = min(float(x.min()), float(np.min(base - amp)))
    if x.min() >= 0:
        lo = max(lo, 0.0)
    return hi, lo


def _refine_peak(t, y, i, level=0.8):
    """Position of the envelope maximum near sample ``i``.

    Fits a parabola to ``log y`` over the contiguous samples above
    ``level * y[i]``, which is exact for a Gaussian top and averages out
    sample-to-sample ripple of a demodulated envelope. Falls back to a
    three-point parabola when too few samples qualify.
    """
    top = y[i]
    if top > 0:
        lo, hi = i, i
        while lo > 0 and y[lo - 1] > level * top:
            lo -= 1
        while hi < y.size - 1 and y[hi + 1] > level * top:
            hi += 1
        if hi - lo >= 4:
            x = t[lo:hi + 1] - t[i]
            c2, c1, _ = np.polyfit(x, np.log(y[lo:hi + 1]), 2)
            if c2 < 0:
                v = -c1 / (2.0 * c2)
                if x[0] <= v <= x[-1]:
                    return float(t[i] + v)
    if 0 < i < y.size - 1:
        a, b, c = y[i - 1:i + 2]
        denom = a - 2.0 * b + c
        if denom < 0:
            return float(t[i] + float(np.clip(0.5 * (a - c) / denom, -0.5, 0.5)) * (t[1] - t[0]))
    return float(t[i])


def summarize(delays, values) -> TraceSummary:
    """:class:`TraceSummary` of one sampled channel."""
    t = as_delays(delays)
    x = np.asarray(values, dtype=np.float64)
    if x.shape != t.shape:
        raise InvalidInputError("delays and values differ in length")
    if not np.all(np.isfinite(x)):
        raise InvalidInputError("trace values must be finite")
    hi, lo = float(x.max()), float(x.min())
    if hi - lo <= 1e-12 * max(1.0, abs(hi), abs(lo)):
        return TraceSummary(0.0, None, None, None, None)
    env = extract_envelope(t, x)
    if env.carrier_frequency is not None:
        hi, lo = _fringe_extrema(t, x, env.carrier_frequency)
    vis = (hi - lo) / (hi + lo) if hi + lo != 0 else 0.0
    i = int(np.argmax(env.values))
    width = fwhm(t, env.values, i)
    return TraceSummary(
        visibility=float(vis),
        fwhm=None if width is None else float(width),
        extremum_position=float(_refine_peak(t, env.values, i)),
        fringe_period=env.fringe_period,
        extremum_kind=env.kind,
    )


def summarize_trace(trace, channel="coincidences") -> TraceSummary:
    """Summary of ``channel`` (one of :data:`CHANNELS`) of an interferogram trace."""
    if channel not in CHANNELS:
        raise InvalidInputError(f"unknown channel {channel!r}; expected one of {CHANNELS}")
    return summarize(trace.delays, getattr(trace, channel))
