"""Coherence of linear, semi-nonlinear and SU(1,1) interferometers.

Closed-form and quadrature models of singles and coincidence interferograms,
trace analysis (visibility, envelope width and position, fringe period) and
the efficiency / zero-delay calibration of a folded PDC setup.
"""

from ._accel import backend
from .calibration import (CalibrationResult, CountRates, double_pass_transmission,
                          klyshko_efficiencies, zero_delay_from_dips)
from .coherence import (TraceSummary, extract_envelope, g1, g1_gaussian, hom_envelope,
                        hom_fwhm, nl_envelope, nl_fwhm, summarize, summarize_trace)
from .errors import InvalidInputError, TruncationError, UndersampledError
from .interferometers import (InterferogramTrace, InterferometerConfig, LinearPhotonPair,
                              LinearSinglePhoton, NonlinearSu11, SemiNonlinearHom,
                              build_two_stage_jsa, hom_semi_nonlinear, linear_photon_pair,
                              linear_single_photon, nonlinear_su11, simulate)
from .numerics import DelayGrid, FrequencyGrid, integrate, inverse_fourier
from .spectra import (EffectiveJsa, FilterSpec, GaussianSource, PdcProcess, SpectralAmplitude,
                      angfreq_from_wavelength, angfreq_from_wavelength_bandwidth,
                      effective_jsa, gaussian_amplitude, gaussian_filter,
                      gaussian_phasematching, sinc_phasematching)

__version__ = "0.1.0"
