"""Time the numba and numpy kernels on a representative SU(1,1) workload.

    python benchmarks/bench_kernels.py [--freq-points 4097] [--delays 2001]

Both backends are loaded in the same process; the numba timing excludes
the first (compiling) call.
"""

import argparse
import timeit

import numpy as np

from coherencesim import FilterSpec, PdcProcess, _accel, effective_jsa
from coherencesim.spectra import angfreq_from_wavelength


def workload(n_freq, n_delay):
    jsa = effective_jsa(PdcProcess.from_walkoff(2.25), FilterSpec.from_wavelength(1554.0, 1.0))
    amp = jsa.amplitude(jsa.grid(n_freq))
    g = amp.grid
    delays = np.linspace(-10.0, 20.0, n_delay)
    times = 2.0 * (delays - jsa.walkoff)
    dft_args = (amp.intensity.astype(np.complex128) * g.weights, g.detuning, times)
    power_args = (amp.values, g.detuning, g.weights, delays, jsa.walkoff,
                  angfreq_from_wavelength(1554.0), 0.7)
    return dft_args, power_args


def best_of(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--freq-points", type=int, default=4097)
    p.add_argument("--delays", type=int, default=2001)
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)

    dft_args, power_args = workload(args.freq_points, args.delays)
    kernels = [("weighted_dft", _accel.weighted_dft_numpy, _accel.weighted_dft_numba, dft_args),
               ("two_stage_power", _accel.two_stage_power_numpy, _accel.two_stage_power_numba,
                power_args)]
    print(f"{args.freq_points} frequency points x {args.delays} delays, best of {args.repeat}")
    print(f"{'kernel':<18}{'numpy_s':>10}{'numba_s':>10}{'speedup':>10}{'max_diff':>11}")
    for name, np_fn, nb_fn, kargs in kernels:
        t_np = best_of(np_fn, kargs, args.repeat)
        if nb_fn is None:
            print(f"{name:<18}{t_np:>10.4f}{'-':>10}{'-':>10}{'-':>11}")
            continue
        nb_args = tuple(np.ascontiguousarray(a) if isinstance(a, np.ndarray) else float(a)
                        for a in kargs)
        ref = np_fn(*kargs)
        diff = float(np.max(np.abs(nb_fn(*nb_args) - ref)))  # also compiles
        t_nb = best_of(nb_fn, nb_args, args.repeat)
        print(f"{name:<18}{t_np:>10.4f}{t_nb:>10.4f}{t_np / t_nb:>9.1f}x{diff:>11.1e}")


if __name__ == "__main__":
    main()
