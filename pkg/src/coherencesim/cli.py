"""Command-line front end.

::

    coherencesim simulate --config job.toml --out trace.csv [--envelope-only] [--json]
    coherencesim analyze --in trace.csv [--json]
    coherencesim calibrate --config calib.toml [--json]

Job files are flat TOML documents; every dimensional key carries its unit
as a suffix (``_ps``, ``_nm``, ``_mm``, ``_rad``, ``_cps``). See
``configs/`` for one example per interferometer.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import numpy as np

from . import calibration, coherence, interferometers as ifm, spectra
from .errors import InvalidInputError
from .numerics import DEFAULT_FREQ_POINTS, DelayGrid, FrequencyGrid

CSV_HEADER = "delay_ps,singles_a,singles_b,coincidences"
CSV_SCHEMA = "# coherencesim interferogram schema=1"

VARIANTS = ("linear_single_photon", "linear_photon_pair", "semi_nonlinear_hom", "nonlinear_su11")

_COMMON_KEYS = {"mode", "variant", "evaluation", "envelope_only", "output_path",
                "delay_start_ps", "delay_stop_ps", "delay_points", "freq_points"}
_VARIANT_KEYS = {
    "linear_single_photon": {"center_wavelength_nm", "pulse_fwhm_ps"},
    "linear_photon_pair": {"center_wavelength_nm", "tau_joint_ps"},
    "semi_nonlinear_hom": {"center_wavelength_nm", "walkoff_ps", "length_mm",
                           "inv_gv_diff_ps_per_mm", "filter_fwhm_nm"},
}
_VARIANT_KEYS["nonlinear_su11"] = _VARIANT_KEYS["semi_nonlinear_hom"] | {"phase_Phi_rad"}

_RATE_FIELDS = ("singles_a", "singles_b", "coincidences")
_CALIB_KEYS = {"mode", "dip_single_pass_ps", "dip_double_pass_ps"} | {
    f"{p}_{f}_cps" for p in ("single_pass", "double_pass") for f in _RATE_FIELDS}


class ConfigError(Exception):
    """Invalid job description; the message names the offending field."""


class CsvFormatError(Exception):
    pass


@dataclass
class JobConfig:
    mode: str
    interferometer: ifm.InterferometerConfig | None = None
    delays: DelayGrid | None = None
    freq_points: int = DEFAULT_FREQ_POINTS
    input_path: str | None = None
    output_path: str | None = None
    emit_envelope: bool = False
    calibration: dict = field(default_factory=dict)


# -- config parsing --------------------------------------------------------

def _get(doc, key, kind, default=None, required=True):
    if key not in doc:
        if required and default is None:
            raise ConfigError(f"field '{key}': missing")
        return default
    v = doc[key]
    if kind is float:
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise ConfigError(f"field '{key}': expected a finite number, got {v!r}")
        return float(v)
    if kind is int:
        if isinstance(v, bool) or not isinstance(v, int):
            raise ConfigError(f"field '{key}': expected an integer, got {v!r}")
        return v
    if not isinstance(v, kind):
        raise ConfigError(f"field '{key}': expected {kind.__name__}, got {v!r}")
    return v


def _positive(doc, key, default=None, required=True):
    v = _get(doc, key, float, default, required)
    if v is not None and not v > 0:
        raise ConfigError(f"field '{key}': must be positive, got {v}")
    return v


def load_document(path):
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file {path} not found") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config file {path}: {exc}") from None


def _check_keys(doc, allowed):
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise ConfigError(f"field '{unknown[0]}': unknown key")


def _jsa_from(doc):
    lam = _positive(doc, "center_wavelength_nm", spectra.DEFAULT_SIGNAL_WAVELENGTH)
    omega_s0 = spectra.angfreq_from_wavelength(lam)
    if "walkoff_ps" in doc:
        if "inv_gv_diff_ps_per_mm" in doc:
            raise ConfigError("field 'walkoff_ps': give either walkoff_ps or inv_gv_diff_ps_per_mm")
        pdc = spectra.PdcProcess.from_walkoff(_get(doc, "walkoff_ps", float),
                                              _positive(doc, "length_mm", 19.0),
                                              omega_s0=omega_s0)
    else:
        pdc = spectra.PdcProcess(_positive(doc, "length_mm", 19.0),
                                 _get(doc, "inv_gv_diff_ps_per_mm", float), omega_s0=omega_s0)
    filt = None
    if "filter_fwhm_nm" in doc:
        filt = spectra.FilterSpec.from_wavelength(lam, _positive(doc, "filter_fwhm_nm"))
    try:
        return spectra.effective_jsa(pdc, filt), omega_s0
    except InvalidInputError as exc:
        raise ConfigError(f"field 'walkoff_ps': {exc}") from None


def parse_simulate(doc) -> JobConfig:
    variant = _get(doc, "variant", str)
    if variant not in VARIANTS:
        raise ConfigError(f"field 'variant': expected one of {', '.join(VARIANTS)}, got {variant!r}")
    _check_keys(doc, _COMMON_KEYS | _VARIANT_KEYS[variant])
    mode = _get(doc, "mode", str, "simulate")
    if mode != "simulate":
        raise ConfigError(f"field 'mode': expected 'simulate', got {mode!r}")
    evaluation = _get(doc, "evaluation", str, "closed_form")
    if evaluation not in ifm.EVALUATIONS:
        raise ConfigError(f"field 'evaluation': expected one of {ifm.EVALUATIONS}, got {evaluation!r}")

    n = _get(doc, "delay_points", int)
    try:
        delays = DelayGrid(_get(doc, "delay_start_ps", float), _get(doc, "delay_stop_ps", float), n)
    except InvalidInputError as exc:
        raise ConfigError(f"field 'delay_points' / 'delay_start_ps' / 'delay_stop_ps': {exc}") from None
    freq_points = _get(doc, "freq_points", int, DEFAULT_FREQ_POINTS)
    if freq_points < 17 or freq_points % 2 == 0:
        raise ConfigError(f"field 'freq_points': must be an odd integer >= 17, got {freq_points}")

    if variant == "linear_single_photon":
        w0 = spectra.angfreq_from_wavelength(_positive(doc, "center_wavelength_nm", 1554.0))
        model = ifm.LinearSinglePhoton(
            spectra.GaussianSource.from_duration(w0, _positive(doc, "pulse_fwhm_ps")))
    elif variant == "linear_photon_pair":
        w0 = spectra.angfreq_from_wavelength(_positive(doc, "center_wavelength_nm", 1554.0))
        model = ifm.LinearPhotonPair(w0, _positive(doc, "tau_joint_ps"))
    elif variant == "semi_nonlinear_hom":
        model = ifm.SemiNonlinearHom(_jsa_from(doc)[0])
    else:
        jsa, omega_s0 = _jsa_from(doc)
        phi = _get(doc, "phase_Phi_rad", float, 0.0)
        if not 0.0 <= phi < 2.0 * math.pi:
            raise ConfigError(f"field 'phase_Phi_rad': must lie in [0, 2 pi), got {phi}")
        model = ifm.NonlinearSu11(jsa, phi, omega_s0)

    out = _get(doc, "output_path", str, required=False)
    if out == "":
        raise ConfigError("field 'output_path': must not be empty")
    return JobConfig(mode="simulate",
                     interferometer=ifm.InterferometerConfig(model, evaluation),
                     delays=delays, freq_points=freq_points, output_path=out,
                     emit_envelope=_get(doc, "envelope_only", bool, False, required=False))


def parse_calibrate(doc) -> JobConfig:
    _check_keys(doc, _CALIB_KEYS)
    cal = {}
    dips = [k for k in ("dip_single_pass_ps", "dip_double_pass_ps") if k in doc]
    if len(dips) == 1:
        missing = ({"dip_single_pass_ps", "dip_double_pass_ps"} - set(dips)).pop()
        raise ConfigError(f"field '{missing}': missing (dip positions come in pairs)")
    if dips:
        cal["dips"] = (_get(doc, "dip_single_pass_ps", float), _get(doc, "dip_double_pass_ps", float))
    for prefix in ("single_pass", "double_pass"):
        keys = [f"{prefix}_{f}_cps" for f in _RATE_FIELDS]
        present = [k for k in keys if k in doc]
        if not present:
            continue
        vals = []
        for k in keys:
            v = _get(doc, k, float)
            if v < 0:
                raise ConfigError(f"field '{k}': must be >= 0, got {v}")
            vals.append(v)
        try:
            cal[prefix] = calibration.CountRates(*vals)
        except InvalidInputError as exc:
            raise ConfigError(f"field '{prefix}_coincidences_cps': {exc}") from None
    if "double_pass" in cal and "single_pass" not in cal:
        raise ConfigError("field 'single_pass_singles_a_cps': missing (needed for transmissions)")
    if not cal:
        raise ConfigError("calibrate needs dip positions and/or count rates")
    return JobConfig(mode="calibrate", calibration=cal)


# -- CSV ---------------------------------------------------------------------

def format_csv(trace: ifm.InterferogramTrace) -> str:
    lines = [CSV_SCHEMA, CSV_HEADER]
    cols = (trace.delays, trace.singles_a, trace.singles_b, trace.coincidences)
    for row in zip(*(c.tolist() for c in cols)):
        lines.append(",".join(repr(v) for v in row))
    return "\n".join(lines) + "\n"


def write_csv(trace, path):
    Path(path).write_text(format_csv(trace), encoding="utf-8")


def read_csv(path) -> ifm.InterferogramTrace:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise CsvFormatError(f"{path}: cannot read ({exc})") from None
    rows = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if "schema=" in line and line != CSV_SCHEMA:
                raise CsvFormatError(f"{path}:{lineno}: unsupported schema line {line!r}")
            continue
        if not header_seen:
            if line != CSV_HEADER:
                raise CsvFormatError(f"{path}:{lineno}: expected header {CSV_HEADER!r}")
            header_seen = True
            continue
        parts = line.split(",")
        if len(parts) != 4:
            raise CsvFormatError(f"{path}:{lineno}: expected 4 fields, got {len(parts)}")
        try:
            vals = [float(p) for p in parts]
        except ValueError:
            raise CsvFormatError(f"{path}:{lineno}: non-numeric field in {line!r}") from None
        if not all(math.isfinite(v) for v in vals):
            raise CsvFormatError(f"{path}:{lineno}: non-finite value")
        rows.append(vals)
    if not header_seen:
        raise CsvFormatError(f"{path}: missing header {CSV_HEADER!r}")
    if len(rows) < 3:
        raise CsvFormatError(f"{path}: need at least 3 data rows, got {len(rows)}")
    arr = np.array(rows)
    try:
        return ifm.InterferogramTrace(arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3])
    except InvalidInputError as exc:
        raise CsvFormatError(f"{path}: {exc}") from None


# -- reporting ---------------------------------------------------------------

def summarize_all(trace):
    return {ch: coherence.summarize_trace(trace, ch) for ch in coherence.CHANNELS}


def _fmt(v, scale=1.0, prec=4):
    return "-" if v is None else f"{v * scale:.{prec}f}"


def format_summary(summaries) -> str:
    head = (f"{'channel':<14}{'visibility':>12}{'fwhm_ps':>12}{'extremum_ps':>14}"
            f"{'kind':>7}{'fringe_fs':>12}")
    lines = [head]
    for ch, s in summaries.items():
        lines.append(f"{ch:<14}{s.visibility:>12.6f}{_fmt(s.fwhm):>12}"
                     f"{_fmt(s.extremum_position):>14}{(s.extremum_kind or '-'):>7}"
                     f"{_fmt(s.fringe_period, 1e3):>12}")
    return "\n".join(lines)


def _emit(text, payload, as_json):
    print(text)
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))


# -- subcommands --------------------------------------------------------------

def run_simulate(cfg: JobConfig, as_json=False) -> int:
    model = cfg.interferometer
    grid = None
    if cfg.freq_points != DEFAULT_FREQ_POINTS:
        grid = _default_grid(model.variant, cfg.freq_points)
    try:
        trace = ifm.simulate(model, cfg.delays, envelope_only=cfg.emit_envelope, grid=grid)
    except InvalidInputError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    try:
        write_csv(trace, cfg.output_path)
    except OSError as exc:
        print(f"cannot write {cfg.output_path}: {exc}", file=sys.stderr)
        return 2
    summaries = summarize_all(trace)
    _emit(format_summary(summaries),
          {"channels": {k: s.as_dict() for k, s in summaries.items()}}, as_json)
    return 0


def _default_grid(variant, n):
    if isinstance(variant, ifm.LinearSinglePhoton):
        return FrequencyGrid.for_sigma(variant.source.sigma, variant.source.omega0, n)
    if isinstance(variant, ifm.LinearPhotonPair):
        return FrequencyGrid.for_sigma(math.sqrt(2.0) / variant.tau_joint, 0.0, n)
    return FrequencyGrid.for_sigma(variant.jsa.sigma_eff, 0.0, n)


def run_analyze(cfg: JobConfig, as_json=False) -> int:
    try:
        trace = read_csv(cfg.input_path)
        summaries = summarize_all(trace)
    except (CsvFormatError, InvalidInputError) as exc:
        print(f"malformed CSV: {exc}", file=sys.stderr)
        return 1
    _emit(format_summary(summaries),
          {"channels": {k: s.as_dict() for k, s in summaries.items()}}, as_json)
    return 0


def run_calibrate(cfg: JobConfig, as_json=False) -> int:
    cal = cfg.calibration
    lines, payload = [], {}
    if "dips" in cal:
        res = calibration.zero_delay_from_dips(*cal["dips"])
        lines += [f"zero_position_ps      {res.zero_position:.6f}",
                  f"walkoff_estimate_ps   {res.walkoff_estimate:.6f}"]
        payload.update(zero_position_ps=res.zero_position, walkoff_estimate_ps=res.walkoff_estimate)
    effs = {}
    for prefix in ("single_pass", "double_pass"):
        if prefix in cal:
            try:
                effs[prefix] = calibration.klyshko_efficiencies(cal[prefix])
            except InvalidInputError as exc:
                print(f"config error: field '{prefix}_singles_a_cps': {exc}", file=sys.stderr)
                return 1
            ea, eb = effs[prefix]
            lines.append(f"klyshko_{prefix:<12}  a={ea:.4f}  b={eb:.4f}")
            payload[f"klyshko_{prefix}"] = [ea, eb]
    if "double_pass" in effs:
        try:
            ta, tb = calibration.double_pass_transmission(effs["single_pass"], effs["double_pass"])
        except InvalidInputError as exc:
            print(f"config error: field 'single_pass_coincidences_cps': {exc}", file=sys.stderr)
            return 1
        lines.append(f"transmission          a={ta:.4f}  b={tb:.4f}")
        payload["transmission"] = [ta, tb]
    _emit("\n".join(lines), payload, as_json)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="coherencesim",
                                description="Interferogram simulation and analysis.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="simulate an interferometer and write a CSV trace")
    s.add_argument("--config", required=True)
    s.add_argument("--out", help="CSV destination (overrides output_path)")
    s.add_argument("--envelope-only", action="store_true",
                   help="drop the optical carrier; coarse delay grids allowed")
    s.add_argument("--json", action="store_true", help="also print a JSON summary")

    a = sub.add_parser("analyze", help="summarize a CSV trace")
    a.add_argument("--in", dest="input", required=True)
    a.add_argument("--json", action="store_true")

    c = sub.add_parser("calibrate", help="efficiencies and zero delay")
    c.add_argument("--config", required=True)
    c.add_argument("--json", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "simulate":
            cfg = parse_simulate(load_document(args.config))
            if args.out:
                cfg.output_path = args.out
            if args.envelope_only:
                cfg.emit_envelope = True
            if not cfg.output_path:
                raise ConfigError("field 'output_path': missing (or pass --out)")
            return run_simulate(cfg, args.json)
        if args.command == "analyze":
            return run_analyze(JobConfig(mode="analyze", input_path=args.input), args.json)
        cfg = parse_calibrate(load_document(args.config))
        return run_calibrate(cfg, args.json)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
