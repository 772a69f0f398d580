"""Benchmark the compiled SU(2) propagation kernel against the numpy fallback.

Workload mirrors the probability-map inner loop: batches of random controls
propagated through the transverse canonical system.

Run: python benchmarks/bench_su2.py [--samples 1000] [--segments 100] [--reps 20]
"""

import argparse
import time

import numpy as np

from qlandscape import _su2_numpy
from qlandscape.backend import backend_name

try:
    from qlandscape import _su2_cy
except ImportError:
    _su2_cy = None


def bench(fn, hx, hy, hz, dt, reps):
    fn(hx, hy, hz, dt)  # warm up
    start = time.perf_counter()
    for _ in range(reps):
        fn(hx, hy, hz, dt)
    return (time.perf_counter() - start) / reps


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--samples", type=int, default=1000)
    parser.add_argument("--segments", type=int, default=100)
    parser.add_argument("--reps", type=int, default=20)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    amps = rng.standard_normal((args.samples, args.segments))
    hx, hy, hz = amps, 0.3 * amps, np.ones_like(amps)
    dt = np.pi / 3.0 / args.segments

    t_np = bench(_su2_numpy.propagate_pauli_batch, hx, hy, hz, dt, args.reps)
    steps = args.samples * args.segments
    print(f"active backend: {backend_name()}")
    print(f"numpy : {t_np * 1e3:8.3f} ms/batch  ({steps / t_np / 1e6:7.2f} Msteps/s)")
    if _su2_cy is None:
        print("cython: extension not built")
        return
    t_cy = bench(_su2_cy.propagate_pauli_batch, hx, hy, hz, dt, args.reps)
    print(f"cython: {t_cy * 1e3:8.3f} ms/batch  ({steps / t_cy / 1e6:7.2f} Msteps/s)")
    print(f"speedup: {t_np / t_cy:.2f}x")
    u_np = _su2_numpy.propagate_pauli_batch(hx, hy, hz, dt)
    u_cy = _su2_cy.propagate_pauli_batch(hx, hy, hz, dt)
    print(f"max |numpy - cython| = {np.max(np.abs(u_np - u_cy)):.3e}")


if __name__ == "__main__":
    main()
