"""Compare the compiled and numpy segment-pair kernels on realistic coils.

Times the double-sum kernel behind mutual/self inductance for a range of
discretization sizes and prints a speedup table.  Run as:

    python benchmarks/benchmark_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from riptsim._kernels import numpy_backend
from riptsim.geometry import CoilShape, WireSpec, build_coil, transform_coil
from riptsim.magnetics import DEFAULT_SETTINGS

try:
    from riptsim._kernels import _neumann as compiled_backend
except ImportError:
    compiled_backend = None


def coil_pair(segments_per_turn):
    wire = WireSpec(cross_section_radius=0.75e-3)
    shape = CoilShape.circle(1.0, 5, 0.01)
    tx = build_coil(shape, wire, segments_per_turn)
    rx = transform_coil(build_coil(shape, wire, segments_per_turn),
                        translation=(0.0, 0.0, 1.0))
    return tx, rx


def time_backend(backend, tx, rx, repeats):
    nodes, weights = DEFAULT_SETTINGS.unit_rule()
    cutoff = 4.0 * max(tx.segment_lengths.max(), rx.segment_lengths.max())
    args = (tx.segment_starts, tx.segment_vectors,
            rx.segment_starts, rx.segment_vectors,
            False, nodes, weights, cutoff)
    backend.pair_sum(*args)  # warm-up
    best = np.inf
    value = None
    for _ in range(repeats):
        start = time.perf_counter()
        value = backend.pair_sum(*args)
        best = min(best, time.perf_counter() - start)
    return best, value


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repeats per case (best is reported)")
    args = parser.parse_args()

    print(f"{'segments/coil':>14} {'numpy [ms]':>12} {'compiled [ms]':>14} "
          f"{'speedup':>8} {'rel diff':>10}")
    for spt in (32, 64, 128, 256):
        tx, rx = coil_pair(spt)
        n = len(tx.segment_lengths)
        t_np, v_np = time_backend(numpy_backend, tx, rx, args.repeats)
        if compiled_backend is None:
            print(f"{n:>14d} {t_np * 1e3:>12.2f} {'unavailable':>14} "
                  f"{'-':>8} {'-':>10}")
            continue
        t_cy, v_cy = time_backend(compiled_backend, tx, rx, args.repeats)
        rel = abs(v_cy - v_np) / abs(v_np)
        print(f"{n:>14d} {t_np * 1e3:>12.2f} {t_cy * 1e3:>14.2f} "
              f"{t_np / t_cy:>8.2f} {rel:>10.1e}")
    if compiled_backend is None:
        print("\ncompiled kernel not built; install with Cython available "
              "to compare")


if __name__ == "__main__":
    main()
