"""Compare the numba and numpy kernel backends on full decay searches.

Usage: python3 benchmarks/bench_kernels.py [--boxes 3x3,4x4,6x1] [--repeat 3] [--workers 1]

The first numba call pays JIT compilation (or cache load); it is timed
separately and excluded from the per-box figures.
"""
import argparse
import statistics
import time

from decaylab import kernels
from decaylab.decay_search import decay


def _parse_boxes(text):
    out = []
    for item in text.split(","):
        a, b = item.lower().split("x")
        out.append((int(a), int(b)))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--boxes", default="3x3,4x4,5x5,8x1")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    backends = kernels.available_backends()
    if "numba" in backends:
        t0 = time.perf_counter()
        decay(1, 1, backend="numba")
        print(f"numba warm-up (compile or cache load): {time.perf_counter() - t0:.3f}s")

    print(f"{'box':>8} {'pairs':>12} " + " ".join(f"{b:>12}" for b in backends) + "   speedup")
    for n1, n2 in _parse_boxes(args.boxes):
        times = {}
        results = {}
        for b in backends:
            samples = []
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                rec = decay(n1, n2, backend=b, workers=args.workers, allow_over_budget=True)
                samples.append(time.perf_counter() - t0)
            times[b] = statistics.median(samples)
            results[b] = rec
        ref = results[backends[0]]
        assert all(r.same_result(ref) for r in results.values()), "backends disagree"
        speed = times["numpy"] / times["numba"] if "numba" in times else float("nan")
        cols = " ".join(f"{times[b]:>11.4f}s" for b in backends)
        print(f"{n1}x{n2:<6} {ref.orbit_reduced_count:>12} {cols}   {speed:6.1f}x")


if __name__ == "__main__":
    main()
