"""Compare the numpy and numba kernel backends on random relation batches.

    python3 benchmarks/bench_kernels.py [--states 6] [--batch 10000] [--repeat 5]

Both backends are first checked to agree on the batch, then each kernel is
timed (best of --repeat, after one warm-up call that also triggers JIT
compilation).
"""

import argparse
import time

import numpy as np

from katd import kernels
from katd.rel import random_relations_array


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--states", type=int, default=6)
    parser.add_argument("--batch", type=int, default=10_000)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    a = random_relations_array(args.states, args.batch, rng, density=0.3)
    b = random_relations_array(args.states, args.batch, rng, density=0.3)
    p = rng.integers(0, 1 << args.states, size=args.batch, dtype=np.uint64)

    cases = {
        "compose": lambda be: be.compose(a, b),
        "star": lambda be: be.star(a),
        "fdia": lambda be: be.fdia(a, p),
        "bdia": lambda be: be.bdia(a, p),
        "divergence": lambda be: be.divergence(a),
    }
    backends = [kernels.NUMPY] + ([kernels.NUMBA] if kernels.NUMBA is not None else [])
    for name, case in cases.items():
        results = [case(be) for be in backends]
        if any(not np.array_equal(results[0], r) for r in results[1:]):
            raise SystemExit(f"backends disagree on {name}")

    print(f"REL({args.states}), batch {args.batch}, best of {args.repeat}")
    print(f"{'kernel':<12}" + "".join(f"{be.name:>12}" for be in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, case in cases.items():
        secs = [best_of(lambda: case(be), args.repeat) for be in backends]
        row = f"{name:<12}" + "".join(f"{s * 1e3:>10.2f}ms" for s in secs)
        if len(secs) > 1:
            row += f"{secs[0] / secs[1]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
