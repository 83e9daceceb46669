import numpy as np
import pytest

from coherencesim import _accel

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba unavailable")


@needs_numba
def test_weighted_dft_paths_agree():
    rng = np.random.default_rng(7)
    coeffs = rng.normal(size=257) + 1j * rng.normal(size=257)
    omega = np.linspace(-3, 3, 257)
    times = np.linspace(-20, 20, 333)
    a = _accel.weighted_dft_numba(coeffs, omega, times)
    b = _accel.weighted_dft_numpy(coeffs, omega, times)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-11)


@needs_numba
def test_two_stage_power_paths_agree():
    rng = np.random.default_rng(3)
    phi = rng.normal(size=129) + 1j * rng.normal(size=129)
    omega = np.linspace(-2, 2, 129)
    weights = np.full(129, omega[1] - omega[0])
    delays = np.linspace(-5, 10, 257)
    a = _accel.two_stage_power_numba(phi, omega, weights, delays, 2.2, 1212.13, 0.4)
    b = _accel.two_stage_power_numpy(phi, omega, weights, delays, 2.2, 1212.13, 0.4)
    np.testing.assert_allclose(a, b, rtol=1e-11)


def test_numpy_chunking_is_seamless(monkeypatch):
    monkeypatch.setattr(_accel, "_CHUNK_ELEMENTS", 100)
    omega = np.linspace(-1, 1, 33)
    times = np.linspace(0, 4, 50)
    chunked = _accel.weighted_dft_numpy(np.ones(33), omega, times)
    direct = np.exp(1j * np.outer(times, omega)).sum(axis=1)
    np.testing.assert_allclose(chunked, direct, atol=1e-12)


def test_deterministic():
    omega = np.linspace(-1, 1, 101)
    times = np.linspace(-3, 3, 77)
    c = np.exp(-omega ** 2).astype(complex)
    assert np.array_equal(_accel.weighted_dft(c, omega, times), _accel.weighted_dft(c, omega, times))


@pytest.mark.parametrize("chunk", [1 << 20, 64])
def test_numpy_order_independent(monkeypatch, chunk):
    monkeypatch.setattr(_accel, "_CHUNK_ELEMENTS", chunk)
    omega = np.linspace(-1, 1, 101)
    times = np.random.default_rng(1).uniform(-3, 3, 77)
    c = np.exp(-omega ** 2).astype(complex)
    perm = np.random.default_rng(2).permutation(times.size)
    a = _accel.weighted_dft_numpy(c, omega, times)
    assert np.array_equal(_accel.weighted_dft_numpy(c, omega, times[perm]), a[perm])
    w = np.full(101, 0.02)
    p = _accel.two_stage_power_numpy(c, omega, w, times, 2.2, 1212.0, 0.3)
    assert np.array_equal(_accel.two_stage_power_numpy(c, omega, w, times[perm], 2.2, 1212.0, 0.3),
                          p[perm])


def test_backend_name():
    assert _accel.backend() == ("numba" if _accel.HAVE_NUMBA else "numpy")
