"""Compare the pure-Python and compiled interval kernels.

Run: python benchmarks/bench_kernels.py [repeats]
"""

import random
import sys
import time

from cartwheel_discharge._kernels import _py

try:
    from cartwheel_discharge._kernels import _speed
except ImportError:
    _speed = None


def workload(seed=11, count=3000, d=9):
    rng = random.Random(seed)
    n = 5 * d + 1
    items = []
    for _ in range(count):
        lo = bytes(rng.randrange(5, 10) for _ in range(n))
        hi = bytes(min(12, b + rng.randrange(0, 5)) for b in lo)
        ent = []
        for _ in range(rng.randrange(1, 6)):
            p = rng.randrange(1, 2 * d + 1)
            l = rng.randrange(5, 10)
            ent += [p, l, min(12, l + rng.randrange(0, 4))]
        items.append((lo, hi, bytes(ent), rng.randrange(0, d)))
    return items, d


def bench(mod, items, d, repeats):
    t0 = time.perf_counter()
    sink = 0
    for _ in range(repeats):
        for lo, hi, ent, shift in items:
            if mod.outlet_enforced(lo, hi, ent, shift, d):
                sink += 1
            if mod.outlet_permitted(lo, hi, ent, shift, d):
                sink += 1
            if mod.outlet_wedge(lo, hi, ent, shift, d) is not None:
                sink += 1
    return time.perf_counter() - t0, sink


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 10
    items, d = workload()
    calls = 3 * len(items) * repeats
    py_t, py_sink = bench(_py, items, d, repeats)
    print(f"python   kernel: {py_t:8.3f}s  ({calls / py_t / 1e6:6.2f} Mcalls/s)")
    if _speed is None:
        print("compiled kernel: not built")
        return
    c_t, c_sink = bench(_speed, items, d, repeats)
    assert py_sink == c_sink, "kernels disagree on the benchmark workload"
    print(f"compiled kernel: {c_t:8.3f}s  ({calls / c_t / 1e6:6.2f} Mcalls/s)")
    print(f"speedup: {py_t / c_t:.1f}x")


if __name__ == "__main__":
    main()
