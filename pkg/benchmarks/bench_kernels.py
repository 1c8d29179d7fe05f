"""Timing of the compiled kernels against their numpy fallbacks.

Each path runs in its own interpreter because ``TC3_DISABLE_NUMBA`` is read at
import time. The first call of every kernel is a warm-up (numba compiles on
it); the reported figure is the median of the following repeats.

    python3 benchmarks/bench_kernels.py [--repeats 5] [--size 200]
"""

import argparse
import json
import os
import statistics
import subprocess
import sys
import time


def _timed(func, repeats):
    func()
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        func()
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def worker(repeats, size):
    import numpy as np

    from tc3 import algebra, diag, kernels
    from tc3._jit import NUMBA_ENABLED
    from tc3.spectra import ModelParams

    rng = np.random.default_rng(7)
    a = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
    herm = (a + a.conj().T) / 2
    gens = algebra.su11_sector(1, size)
    gen = (0.6 * gens.Kplus - 0.6 * gens.Kminus).toarray()
    par = algebra.displacement_params("su11", 0.8 + 0.3j)
    params = ModelParams(1.0, 1.1, 0.9, 0.2)

    results = {
        "numba": NUMBA_ENABLED,
        "hermitian_eigenvalues": _timed(lambda: diag.hermitian_eigenvalues(herm), repeats),
        "matrix_exponential": _timed(lambda: diag.matrix_exponential(gen), repeats),
        "pncs11_amplitudes": _timed(lambda: kernels.pncs11_amplitudes(2.0, 12, par.zeta, par.eta, 400), repeats),
        "discrepancy_table_q6": _timed(lambda: diag.discrepancy_table(params, 6, 6, g_grid=[0.05, 0.1, 0.2]), repeats),
    }
    # a checksum that must agree between the two paths
    results["checksum"] = float(np.sum(diag.hermitian_eigenvalues(herm)))
    print(json.dumps(results))


def run_path(disable, repeats, size):
    env = dict(os.environ)
    if disable:
        env["TC3_DISABLE_NUMBA"] = "1"
    else:
        env.pop("TC3_DISABLE_NUMBA", None)
    cmd = [sys.executable, __file__, "--worker", "--repeats", str(repeats), "--size", str(size)]
    out = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--size", type=int, default=200)
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()
    if args.worker:
        worker(args.repeats, args.size)
        return

    fast = run_path(False, args.repeats, args.size)
    slow = run_path(True, args.repeats, args.size)
    if not fast["numba"]:
        print("numba is not importable here; both runs used the numpy path")
    print(f"{'kernel':<26}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>10}")
    for key in ("hermitian_eigenvalues", "matrix_exponential", "pncs11_amplitudes", "discrepancy_table_q6"):
        f, s = fast[key] * 1e3, slow[key] * 1e3
        print(f"{key:<26}{f:>12.3f}{s:>12.3f}{s / f:>10.2f}")
    print(f"eigenvalue checksum difference: {abs(fast['checksum'] - slow['checksum']):.2e}")


if __name__ == "__main__":
    main()
