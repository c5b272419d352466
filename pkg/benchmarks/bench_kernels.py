"""Compare the compiled mask-sweep kernels against the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--bits N] [--repeat R]
"""

import argparse
import random
import time

from motifkit._kernels import _slow

try:
    from motifkit._kernels import _fast
except ImportError:
    _fast = None


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def group_closure(gens, m):
    ident = tuple(range(m))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                prod = tuple(g[h[i]] for i in range(m))
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return sorted(seen)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bits", type=int, default=20, help="mask width m (2^m values)")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    m = args.bits
    values = [rng.randint(-1000, 1000) for _ in range(1 << m)]
    # a modest permutation group acting on the mask bits
    gens = [tuple(rng.sample(range(min(m, 10)), min(m, 10))) for _ in range(2)]
    gens = [tuple(list(g) + list(range(len(g), m))) for g in gens]
    elements = group_closure(gens, m)[:256]

    backends = [("numpy", _slow)]
    if _fast is not None:
        backends.append(("compiled", _fast))
    else:
        print("compiled backend not available; benchmarking numpy only")

    cases = [
        ("subset_sign_transform", lambda mod: mod.subset_sign_transform(values)),
        ("popcount_signed_sum", lambda mod: mod.popcount_signed_sum(values, m)),
        (
            f"orbit_min_labels ({len(elements)} elements)",
            lambda mod: mod.orbit_min_labels(elements, m),
        ),
    ]

    print(f"m={m} ({1 << m} masks), repeat={args.repeat}\n")
    print(f"{'kernel':<42}" + "".join(f"{name:>12}" for name, _ in backends))
    for case_name, call in cases:
        row = f"{case_name:<42}"
        times = []
        for _, mod in backends:
            t = timeit(lambda mod=mod: call(mod), args.repeat)
            times.append(t)
            row += f"{t * 1000:>10.1f}ms"
        if len(times) == 2 and times[1] > 0:
            row += f"   ({times[0] / times[1]:.1f}x)"
        print(row)


if __name__ == "__main__":
    main()
