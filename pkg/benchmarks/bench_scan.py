"""Compare the compiled and pure-Python (k, j, h) scan kernels.

    python benchmarks/bench_scan.py [--repeat N]

Both kernels run on the same windows and must return identical hits.
The residue-class search, which does not scan at all, is timed alongside
for reference.
"""
import argparse
import time

from polhilb import _kernels
from polhilb.irreducibility import search_decompositions
from polhilb.picard import polarisation

# (t, k_hi or None for the full window [0, 2b^2])
CASES = [(2, None), (10, None), (13, None), (137, None), (233, 200_000)]


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels.BACKEND != "cython":
        print("compiled kernel not built; only the Python kernel is available")
    print(f"{'t':>5} {'b':>6} {'k range':>10} {'python s':>10} {'cython s':>10} {'speedup':>8} {'residue s':>10}")
    for t, k_hi in CASES:
        D = polarisation(t)
        a, b = D.yd, D.xh
        k_hi = 2 * b * b if k_hi is None else k_hi
        tp, hp = best_of(lambda: _kernels.scan_window(t, a, b, 0, k_hi, backend="python"), args.repeat)
        if _kernels.BACKEND == "cython":
            tc, hc = best_of(lambda: _kernels.scan_window(t, a, b, 0, k_hi, backend="cython"), args.repeat)
            assert hp == hc, f"kernels disagree at t={t}"
            speed = f"{tp / tc:8.1f}"
            tc_s = f"{tc:10.4f}"
        else:
            speed, tc_s = f"{'-':>8}", f"{'-':>10}"
        tr, _ = best_of(lambda: search_decompositions(t, True), args.repeat)
        print(f"{t:>5} {b:>6} {k_hi:>10} {tp:10.4f} {tc_s} {speed} {tr:10.4f}")


if __name__ == "__main__":
    main()
