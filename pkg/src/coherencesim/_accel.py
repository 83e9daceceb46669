"""Hot inner loops: compiled with numba when available, numpy otherwise.

Both kernels are O(n_freq * n_delay) sums evaluated directly (no FFT), so
the delay grid is independent of the frequency grid.

Set ``COHERENCESIM_DISABLE_NUMBA=1`` in the environment before importing the
package to force the pure-numpy path. The two paths agree to rounding
(``tests/test_accel.py``); ``benchmarks/bench_kernels.py`` times them.
"""

import math
import os

import numpy as np

_FLAG = "COHERENCESIM_DISABLE_NUMBA"
_disabled = os.environ.get(_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _disabled:
        raise ImportError(f"{_FLAG} is set")
    import numba
    from numba import njit, prange
    # TBB probe only warns on the system TBB version
    if numba.config.THREADING_LAYER == "default":
        numba.config.THREADING_LAYER = "workqueue"
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

# keeps the numpy phase matrix around 16 MB per chunk
_CHUNK_ELEMENTS = 1 << 20


def _chunk_rows(n_cols):
    return max(1, _CHUNK_ELEMENTS // max(1, n_cols))


def weighted_dft_numpy(coeffs, omega, times):
    """sum_j coeffs[j] * exp(i * omega[j] * t) for every t in ``times``."""
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    omega = np.asarray(omega, dtype=np.float64)
    times = np.asarray(times, dtype=np.float64)
    out = np.empty(times.size, dtype=np.complex128)
    step = _chunk_rows(omega.size)
    for start in range(0, times.size, step):
        t = times[start:start + step]
        # row sums rather than BLAS: the result must not depend on chunk layout
        out[start:start + step] = (np.exp(1j * np.outer(t, omega)) * coeffs).sum(axis=1)
    return out


def two_stage_power_numpy(phi, omega, weights, delays, walkoff, omega_s0, phase):
    """Quadrature of |phi(W) * (1 + exp(i*theta(W, dt)))|^2 for each delay dt.

    theta = -2*walkoff*W + dt*(omega_s0 + W) + phase.
    """
    phi = np.asarray(phi, dtype=np.complex128)
    omega = np.asarray(omega, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    delays = np.asarray(delays, dtype=np.float64)
    out = np.empty(delays.size, dtype=np.float64)
    step = _chunk_rows(omega.size)
    for start in range(0, delays.size, step):
        dt = delays[start:start + step, None]
        theta = -2.0 * walkoff * omega[None, :] + dt * (omega_s0 + omega[None, :]) + phase
        phi_n = phi[None, :] * (1.0 + np.exp(1j * theta))
        out[start:start + step] = ((phi_n.real ** 2 + phi_n.imag ** 2) * weights).sum(axis=1)
    return out


if HAVE_NUMBA:

    @njit(parallel=True, cache=True)
    def weighted_dft_numba(coeffs, omega, times):
        n = omega.size
        m = times.size
        cr = coeffs.real.copy()
        ci = coeffs.imag.copy()
        out = np.empty(m, dtype=np.complex128)
        for k in prange(m):
            t = times[k]
            re = 0.0
            im = 0.0
            for j in range(n):
                ph = omega[j] * t
                c = math.cos(ph)
                s = math.sin(ph)
                re += cr[j] * c - ci[j] * s
                im += cr[j] * s + ci[j] * c
            out[k] = complex(re, im)
        return out

    @njit(parallel=True, cache=True)
    def two_stage_power_numba(phi, omega, weights, delays, walkoff, omega_s0, phase):
        n = omega.size
        m = delays.size
        pr = phi.real.copy()
        pim = phi.imag.copy()
        out = np.empty(m, dtype=np.float64)
        for k in prange(m):
            dt = delays[k]
            acc = 0.0
            for j in range(n):
                w = omega[j]
                theta = -2.0 * walkoff * w + dt * (omega_s0 + w) + phase
                a = 1.0 + math.cos(theta)
                b = math.sin(theta)
                re = pr[j] * a - pim[j] * b
                im = pr[j] * b + pim[j] * a
                acc += weights[j] * (re * re + im * im)
            out[k] = acc
        return out

    def weighted_dft(coeffs, omega, times):
        return weighted_dft_numba(
            np.ascontiguousarray(coeffs, dtype=np.complex128),
            np.ascontiguousarray(omega, dtype=np.float64),
            np.ascontiguousarray(times, dtype=np.float64),
        )

    def two_stage_power(phi, omega, weights, delays, walkoff, omega_s0, phase):
        return two_stage_power_numba(
            np.ascontiguousarray(phi, dtype=np.complex128),
            np.ascontiguousarray(omega, dtype=np.float64),
            np.ascontiguousarray(weights, dtype=np.float64),
            np.ascontiguousarray(delays, dtype=np.float64),
            float(walkoff), float(omega_s0), float(phase),
        )

else:
    weighted_dft_numba = None
    two_stage_power_numba = None
    weighted_dft = weighted_dft_numpy
    two_stage_power = two_stage_power_numpy


def backend():
    """Name of the active kernel backend: ``"numba"`` or ``"numpy"``."""
    return "numba" if HAVE_NUMBA else "numpy"
