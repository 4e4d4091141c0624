"""Benchmark the compiled kernel lane against the pure-numpy fallback.

Run:  python benchmarks/bench_kernels.py  [N]

Times the three hot paths on representative workloads: complex erfi over
the argument disk, the diagonal-argument bracket of the two-photon
amplitude, and the full amplitude assembly at scan resolution.
"""

import sys
import time

import numpy as np

from chirpedqpm.kernels import available_backends


def bench(fn, *args, repeat=7):
    fn(*args)   # warm-up
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 2 ** 14
    rng = np.random.default_rng(0)

    r = 20 * np.sqrt(rng.uniform(0, 1, n))
    z_disk = r * np.exp(1j * rng.uniform(0, 2 * np.pi, n))
    z_disk = z_disk[(z_disk.real ** 2 - z_disk.imag ** 2) < 650]

    dk0 = rng.uniform(-0.20, 0.12, n)
    ksum = rng.uniform(15.0, 18.0, n)
    eta, length = 3.67112e-6, 20000.0

    lanes = available_backends()
    print(f"workload size: {n} points; lanes: {', '.join(lanes)}")
    rows = [
        ("erfi, argument disk |z|<20", lambda m: m.erfi(z_disk)),
        ("psi bracket (diagonal args)", lambda m: m.psi_bracket(dk0, eta, length)),
        ("full psi assembly", lambda m: m.spectral_amplitude_kernel(dk0, ksum, eta, length)),
    ]
    results = {}
    for label, runner in rows:
        times = {name: bench(lambda: runner(mod)) for name, mod in lanes.items()}
        results[label] = times
        line = "  ".join(f"{name}: {1e3 * t:8.3f} ms" for name, t in times.items())
        if "compiled" in times and "fallback" in times:
            line += f"   speedup x{times['fallback'] / times['compiled']:.2f}"
        print(f"{label:32s} {line}")

    if "compiled" in lanes and "fallback" in lanes:
        worst = 0.0
        a = lanes["fallback"].erfi(z_disk)
        b = lanes["compiled"].erfi(z_disk)
        worst = np.max(np.abs(a - b) / np.maximum(np.abs(a), 1e-250))
        print(f"cross-lane max relative difference (erfi): {worst:.3e}")


if __name__ == "__main__":
    main()
