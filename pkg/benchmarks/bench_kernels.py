"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import random
import time

from mdeck import kernels
from mdeck.collision import SearchConfig, check_R


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = ["python"] + (["cython"] if kernels.BACKEND == "cython" else [])
    rng = random.Random(0)
    strings = ["".join(rng.choice("01") for _ in range(54)) for _ in range(200)]
    cases = [
        ("deck x200 (n=54, m=7)", lambda b: [kernels.fast_deck_counts(x, 7, b) for x in strings]),
        ("unit (n=16, m=5, k=8)", lambda b: kernels.enumerate_unit(16, 5, 8, backend=b)),
        ("check_R(4, 12)", lambda b: check_R(4, 12, SearchConfig(backend=b))),
        ("check_R(5, 16)", lambda b: check_R(5, 16, SearchConfig(backend=b))),
    ]
    print(f"{'case':<26}" + "".join(f"{b:>12}" for b in backends) + "     speedup")
    for name, fn in cases:
        row = [best_of(args.repeat, lambda: fn(b)) for b in backends]
        speedup = f"{row[0] / row[-1]:10.1f}x" if len(row) > 1 else ""
        print(f"{name:<26}" + "".join(f"{t:11.4f}s" for t in row) + speedup)


if __name__ == "__main__":
    main()
