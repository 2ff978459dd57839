"""Time the numba kernels against the numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from aalpha import _kernels
from aalpha.graph import DegreeSequence, path_graph
from aalpha.oracle import prufer_sequences
from aalpha.spectrum import build_a_alpha


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _kernels.NUMBA_AVAILABLE:
        raise SystemExit("numba is not installed; nothing to compare")

    print(f"{'kernel':<34}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>10}")
    for n in (8, 12, 30):
        # paths converge slowly; a fair stress for the iteration loop
        m = build_a_alpha(path_graph(n), 0.5) + np.eye(n)
        cases = [("numba", _kernels.power_iteration_numba), ("numpy", _kernels._power_iteration_numpy)]
        _kernels.power_iteration_numba(m, 1e-12, 10)  # compile
        t = {name: best_of(lambda f=f: f(m, 1e-12, 10**6), args.repeat) for name, f in cases}
        print(f"{'power iteration P_' + str(n):<34}{t['numba'] * 1e3:>12.2f}{t['numpy'] * 1e3:>12.2f}"
              f"{t['numpy'] / t['numba']:>10.1f}")

    for text in ("3,3,2,2,1,1,1,1", "2,2,2,2,2,2,2,1,1", "3,3,2,2,2,2,1,1,1,1"):
        pi = DegreeSequence.parse(text, "tree")
        seqs = prufer_sequences(pi)
        _kernels.prufer_decode_numba(seqs[:1], pi.n)
        t = {
            "numba": best_of(lambda: _kernels.prufer_decode_numba(seqs, pi.n), args.repeat),
            "numpy": best_of(lambda: _kernels._prufer_decode_numpy(seqs, pi.n), args.repeat),
        }
        label = f"prufer decode {len(seqs)} x n={pi.n}"
        print(f"{label:<34}{t['numba'] * 1e3:>12.2f}{t['numpy'] * 1e3:>12.2f}{t['numpy'] / t['numba']:>10.1f}")


if __name__ == "__main__":
    main()
