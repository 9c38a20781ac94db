"""Compare the compiled pair-counting kernel against the pure-Python fallback.

Usage:  python benchmarks/bench_paircount.py [sizes...]

Pair enumeration is the hot loop behind Somers' D: n items mean n(n-1)/2
comparisons, so desk-scale inputs (n around 10,000) are ~5e7 pairs per call.
"""

from __future__ import annotations

import sys
import time

import numpy as np

from chaingrade.stats import core
from chaingrade.stats import _paircount_py

try:
    from chaingrade.stats import _paircount

    KERNELS = [("compiled", _paircount), ("python", _paircount_py)]
except ImportError:
    print("compiled kernel not built; benchmarking the fallback only")
    KERNELS = [("python", _paircount_py)]


def bench(kernel, ref: np.ndarray, pred: np.ndarray, repeats: int = 3) -> tuple[float, tuple]:
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = kernel.count_pairs(ref, pred)
        best = min(best, time.perf_counter() - start)
    return best, tuple(int(v) for v in result)


def main() -> None:
    sizes = [int(arg) for arg in sys.argv[1:]] or [1_000, 3_000, 10_000]
    rng = np.random.default_rng(0)
    print(f"active kernel in chaingrade.stats: {core.KERNEL}")
    print(f"{'n':>8} {'pairs':>14} {'kernel':>9} {'seconds':>10} {'pairs/s':>12}")
    for n in sizes:
        ref = rng.choice([0.0, 0.5, 1.0], size=n)
        pred = np.ascontiguousarray(rng.random(n))
        pairs = n * (n - 1) // 2
        results = {}
        for name, kernel in KERNELS:
            seconds, counts = bench(kernel, ref, pred)
            results[name] = counts
            print(f"{n:>8} {pairs:>14,} {name:>9} {seconds:>10.4f} {pairs / seconds:>12,.0f}")
        if len(results) == 2:
            assert results["compiled"] == results["python"], "kernels disagree!"
    if len(KERNELS) == 2:
        print("kernels agree on all sizes")


if __name__ == "__main__":
    main()
