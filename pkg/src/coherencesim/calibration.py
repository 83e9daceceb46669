"""Heralding efficiencies and absolute zero-delay calibration of the folded setup."""

from __future__ import annotations

from dataclasses import dataclass
import math

from .errors import InvalidInputError


@dataclass(frozen=True)
class CountRates:
    """Measured rates in counts per second."""

    singles_a: float
    singles_b: float
    coincidences: float

    def __post_init__(self):
        for name in ("singles_a", "singles_b", "coincidences"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise InvalidInputError(f"CountRates.{name} must be finite and >= 0, got {v}")
        if self.coincidences > min(self.singles_a, self.singles_b):
            raise InvalidInputError("coincidences cannot exceed either singles rate")


@dataclass(frozen=True)
class CalibrationResult:
    zero_position: float
    walkoff_estimate: float


def klyshko_efficiencies(r: CountRates):
    """Heralding efficiency of each arm: ``(C / n_b, C / n_a)``.

    Arm a is heralded by detections in arm b and vice versa.
    """
    if not (r.singles_a > 0 and r.singles_b > 0):
        raise InvalidInputError("Klyshko efficiencies need non-zero singles in both arms")
    return r.coincidences / r.singles_b, r.coincidences / r.singles_a


def double_pass_transmission(single_pass, double_pass):
    """Per-arm transmission between the two PDC passes.

    Ratio of the heralding efficiency after a double pass to that of a
    single pass. This is a transmission (fraction kept), not a loss.
    """
    (sa, sb), (da, db) = single_pass, double_pass
    if not (sa > 0 and sb > 0):
        raise InvalidInputError("single-pass efficiencies must be positive")
    return da / sa, db / sb


def zero_delay_from_dips(dip_single_pass, dip_double_pass) -> CalibrationResult:
    """Stage zero and walk-off from the two HOM dip positions.

    The dips sit at ``z + t0/2`` (single pass) and ``z + 3 t0/2`` (after a
    second pass through the crystal); solving gives ``t0 = m2 - m1`` and
    ``z = m1 - t0/2``.
    """
    m1, m2 = float(dip_single_pass), float(dip_double_pass)
    if not (math.isfinite(m1) and math.isfinite(m2)):
        raise InvalidInputError("dip positions must be finite")
    walkoff = m2 - m1
    return CalibrationResult(zero_position=m1 - 0.5 * walkoff, walkoff_estimate=walkoff)
