import math

import pytest

from coherencesim import EffectiveJsa, FilterSpec, PdcProcess, effective_jsa
from coherencesim.spectra import angfreq_from_wavelength

# 19 mm waveguide, 1 nm filters at 1554 nm
LENGTH_MM = 19.0
INV_GV_DIFF = 0.2316  # ps/mm, gives a 2.2 ps walk-off
OMEGA_S0 = angfreq_from_wavelength(1554.0)


@pytest.fixture
def pdc():
    return PdcProcess(LENGTH_MM, INV_GV_DIFF)


@pytest.fixture
def nm_filter():
    return FilterSpec.from_wavelength(1554.0, 1.0)


@pytest.fixture
def jsa(pdc, nm_filter):
    return effective_jsa(pdc, nm_filter)


@pytest.fixture
def jsa_225(nm_filter):
    """Walk-off of the measured HOM dip position, 2.25 ps."""
    return effective_jsa(PdcProcess.from_walkoff(2.25, LENGTH_MM), nm_filter)


@pytest.fixture
def omega_s0():
    return OMEGA_S0


def fringe_step(carrier, per_period=10):
    return 2.0 * math.pi / carrier / per_period


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
