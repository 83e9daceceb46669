import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coherencesim import (
    FilterSpec, FrequencyGrid, GaussianSource, PdcProcess, angfreq_from_wavelength,
    angfreq_from_wavelength_bandwidth, effective_jsa, gaussian_amplitude, gaussian_filter,
    gaussian_phasematching, sinc_phasematching,
)
from coherencesim.errors import InvalidInputError, TruncationError
from coherencesim.numerics import fwhm
from coherencesim.spectra import GAMMA_PM, LN2

# mpmath, 30 digits: 2 pi c / 1554 nm^2 and the resulting widths for a 2.2 ps walk-off
DOMEGA_1NM = 0.780007075736320964
KAPPA_22 = 1.79239197650548425


class TestGaussianAmplitude:
    src = GaussianSource.from_duration(angfreq_from_wavelength(1554.0), 1.0)

    def test_unit_norm(self):
        assert gaussian_amplitude(self.src).norm() == pytest.approx(1.0, abs=1e-9)

    def test_peak_at_center(self):
        amp = gaussian_amplitude(self.src)
        assert np.argmax(np.abs(amp.values)) == amp.grid.n_points // 2

    def test_intensity_fwhm(self):
        amp = gaussian_amplitude(self.src)
        expected = 2 * self.src.sigma * math.sqrt(2 * LN2)
        assert fwhm(amp.grid.detuning, amp.intensity) == pytest.approx(expected, rel=1e-5)

    def test_duration_roundtrip(self):
        assert self.src.duration == pytest.approx(1.0)
        assert self.src.sigma == pytest.approx(math.sqrt(2 * LN2))

    def test_rejects_narrow_grid(self):
        g = FrequencyGrid(self.src.omega0, 5.0 * self.src.sigma, 101)
        with pytest.raises(TruncationError):
            gaussian_amplitude(self.src, g)

    def test_rejects_offset_grid(self):
        g = FrequencyGrid(self.src.omega0 + 1.0, 8.0 * self.src.sigma, 101)
        with pytest.raises(InvalidInputError):
            gaussian_amplitude(self.src, g)


class TestPhaseMatching:
    def grid(self, t0, n=4097):
        return FrequencyGrid(0.0, 4 * math.pi / t0, n)

    def test_walkoff_of_reference_crystal(self, pdc):
        assert pdc.walkoff == pytest.approx(2.2, abs=1e-3)

    def test_energy_conservation_default(self, pdc):
        assert pdc.omega_i0 == pytest.approx(pdc.omega_s0)

    def test_sinc_center_and_zero(self, pdc):
        g = FrequencyGrid(0.0, math.pi / pdc.walkoff, 4097)
        raw = sinc_phasematching(pdc, g, normalize=False)
        assert raw.values[g.n_points // 2] == 1.0
        assert abs(raw.values[-1]) < 1e-12
        assert abs(raw.values[0]) < 1e-12

    def test_sinc_normalized(self, pdc):
        assert sinc_phasematching(pdc, self.grid(pdc.walkoff)).norm() == pytest.approx(1.0, abs=1e-12)

    def test_gaussian_phase(self, pdc):
        g = self.grid(pdc.walkoff, 513)
        raw = gaussian_phasematching(pdc, g, normalize=False)
        small = np.abs(g.detuning) < 1.0
        np.testing.assert_allclose(np.angle(raw.values[small]), -pdc.walkoff * g.detuning[small],
                                   atol=1e-12)

    def test_gaussian_flat_without_walkoff(self):
        pdc = PdcProcess(19.0, 0.0)
        raw = gaussian_phasematching(pdc, FrequencyGrid(0.0, 1.0, 33), normalize=False)
        np.testing.assert_allclose(raw.values, 1.0)

    def test_gamma_matches_sinc_half_max(self):
        # half-max arguments, mpmath: sinc(x)=1/2 at 1.89549..., Gaussian at sqrt(ln2/gamma)
        assert math.sqrt(LN2 / GAMMA_PM) == pytest.approx(1.8954942670, rel=2e-2)

    @settings(max_examples=40, deadline=None)
    @given(t0=st.floats(0.1, 10.0))
    def test_fwhm_agreement(self, t0):
        pdc = PdcProcess.from_walkoff(t0)
        g = self.grid(t0)
        w_sinc = sinc_phasematching(pdc, g).amplitude_fwhm()
        w_gauss = gaussian_phasematching(pdc, g).amplitude_fwhm()
        assert w_gauss == pytest.approx(w_sinc, rel=0.02)


class TestFilter:
    def test_peak_and_half_points(self, nm_filter):
        d = nm_filter.fwhm_intensity
        g = FrequencyGrid(0.0, d / 2, 17)
        f = gaussian_filter(nm_filter, g)
        assert f.values[8] == 1.0
        assert abs(f.values[0]) ** 2 == pytest.approx(0.5, abs=1e-12)
        assert abs(f.values[-1]) ** 2 == pytest.approx(0.5, abs=1e-12)

    def test_bandwidth_conversion(self):
        w = angfreq_from_wavelength_bandwidth(1554.0, 1.0)
        assert w == pytest.approx(0.781, rel=5e-3)
        assert w == pytest.approx(DOMEGA_1NM, rel=1e-12)
        # finite difference of wavelength -> angular frequency
        fd = angfreq_from_wavelength(1553.5) - angfreq_from_wavelength(1554.5)
        assert w == pytest.approx(fd, rel=1e-6)

    def test_bandwidth_linear_and_zero(self):
        assert angfreq_from_wavelength_bandwidth(1554.0, 0.0) == 0.0
        assert angfreq_from_wavelength_bandwidth(1554.0, 2.0) == pytest.approx(
            2 * angfreq_from_wavelength_bandwidth(1554.0, 1.0))

    @pytest.mark.parametrize("lam, dlam", [(0.0, 1.0), (-1.0, 1.0), (1554.0, -1.0)])
    def test_bandwidth_rejects(self, lam, dlam):
        with pytest.raises(InvalidInputError):
            angfreq_from_wavelength_bandwidth(lam, dlam)


class TestEffectiveJsa:
    def test_reference_kappa(self):
        pdc = PdcProcess.from_walkoff(2.2)
        jsa = effective_jsa(pdc, FilterSpec(DOMEGA_1NM))
        assert jsa.kappa == pytest.approx(KAPPA_22, rel=1e-12)
        assert 1.75 <= jsa.kappa <= 1.85
        assert jsa.kappa * jsa.sigma_eff == pytest.approx(0.5, rel=1e-15)

    def test_no_filter_limit(self, pdc):
        jsa = effective_jsa(pdc, None)
        assert jsa.sigma_eff == pytest.approx(1 / (2 * math.sqrt(GAMMA_PM) * pdc.walkoff))
        wide = effective_jsa(pdc, FilterSpec(1e6))
        assert wide.sigma_eff == pytest.approx(jsa.sigma_eff, rel=1e-9)

    def test_no_walkoff_limit(self, nm_filter):
        jsa = effective_jsa(PdcProcess(19.0, 0.0), nm_filter)
        assert jsa.sigma_eff == pytest.approx(nm_filter.fwhm_intensity / (2 * math.sqrt(2 * LN2)))

    def test_unbounded_rejected(self):
        with pytest.raises(InvalidInputError):
            effective_jsa(PdcProcess(19.0, 0.0), None)

    @settings(max_examples=50, deadline=None)
    @given(t0=st.floats(0.05, 10), t1=st.floats(0.05, 10),
           f0=st.floats(0.05, 5), f1=st.floats(0.05, 5))
    def test_monotone(self, t0, t1, f0, f1):
        s = lambda t, f: effective_jsa(PdcProcess.from_walkoff(t), FilterSpec(f)).sigma_eff
        if t0 < t1:
            assert s(t0, f0) >= s(t1, f0)
        if f0 < f1:
            assert s(t0, f0) <= s(t0, f1)

    def test_amplitude_normalized_and_phased(self, jsa):
        amp = jsa.amplitude()
        assert amp.norm() == pytest.approx(1.0, abs=1e-12)
        g = amp.grid
        i = g.n_points // 2 + 10
        assert np.angle(amp.values[i]) == pytest.approx(-jsa.walkoff * g.detuning[i])

    def test_filtered_product_matches_closed_form(self, pdc, nm_filter, jsa):
        g = jsa.grid()
        prod = gaussian_phasematching(pdc, g, normalize=False).values * gaussian_filter(nm_filter, g).values
        np.testing.assert_allclose(prod, jsa.amplitude(g).values / jsa.amplitude(g).values[g.n_points // 2],
                                   atol=1e-12)
