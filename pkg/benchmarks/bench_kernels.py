#!/usr/bin/env python3
"""Benchmark the codeword-enumeration kernels: compiled extension vs the
pure-Python fallback.

Usage:  python3 benchmarks/bench_kernels.py [--repeats N] [--big]

Each case reports the best-of-N wall time per backend and the speedup of
the compiled kernel when it is available.  --big adds a 2^20-message
instance (pure Python takes tens of seconds there; the compiled kernel
does not care).
"""

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from labelweight_hss import kernels
from labelweight_hss.codes import goppa_build, hermitian_build
from labelweight_hss.galois import FieldSpec


def code_case(name, code):
    spec = code.spec
    return (
        name,
        spec,
        code.generator.to_bytes(),
        code.dim,
        code.n,
        bytes(v - 1 for v in code.labeling.map),
        code.s,
    )


def random_case(name, q, k, n, seed):
    p = 2 if q % 2 == 0 else q
    e = 1
    while p**e < q:
        e += 1
    spec = FieldSpec(p, e)
    rng = random.Random(seed)
    rows = bytes(rng.randrange(q) for _ in range(k * n))
    labels0 = bytes(j % n for j in range(n))  # identity labels
    return (name, spec, rows, k, n, labels0, n)


def run_case(case, repeats):
    name, spec, rows, k, n, labels0, s = case
    add, mul = spec.add_table, spec.mul_table
    results = {}
    for backend, impl in sorted(kernels.backends().items()):
        best = None
        value = None
        for _ in range(repeats):
            t0 = time.perf_counter()
            value = impl.min_labelweight(rows, k, n, labels0, add, mul, spec.q, s)
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        results[backend] = (best, value)
    values = {v for _, v in results.values()}
    assert len(values) == 1, f"{name}: backends disagree: {results}"
    return name, spec.q**k, results


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--big", action="store_true", help="include a 2^20-message case")
    args = parser.parse_args()

    cases = [
        code_case("goppa u=4 r=2  [16,8] GF(2)", goppa_build(4, 2)),
        code_case("hermitian q=2 k=5  [8,5] GF(4)", hermitian_build(2, 5)),
        random_case("random [32,16] GF(2)", 2, 16, 32, seed=1),
        random_case("random [18,9] GF(4)", 4, 9, 18, seed=2),
    ]
    if args.big:
        cases.append(random_case("random [40,20] GF(2)", 2, 20, 40, seed=3))

    print(f"active backend: {kernels.BACKEND}")
    print(f"{'case':<34} {'messages':>10} {'pure':>12} {'compiled':>12} {'speedup':>9}")
    for case in cases:
        name, messages, results = run_case(case, args.repeats)
        pure = results["pure"][0]
        if "compiled" in results:
            compiled = results["compiled"][0]
            print(f"{name:<34} {messages:>10} {pure:>11.4f}s {compiled:>11.4f}s {pure / compiled:>8.1f}x")
        else:
            print(f"{name:<34} {messages:>10} {pure:>11.4f}s {'-':>12} {'-':>9}")
    if "compiled" not in kernels.backends():
        print("compiled kernel not built; run: python3 setup.py build_ext --inplace")
    return 0


if __name__ == "__main__":
    sys.exit(main())
