"""Compare the compiled and pure-Python modular elimination kernels.

    python3 benchmarks/bench_rank.py [--repeat 5] [--size 120]

Two workloads: square random matrices mod 2^61 - 1, and the degree-3
relation blocks of the FRT bialgebra for n = 3 at one random point (the
blocks the Poincare computation actually eliminates).
"""
from __future__ import annotations

import argparse
import random
import timeit
from collections import defaultdict

from cgkit import _modp_py, ideal, modp, quantum

try:
    from cgkit import _modp_ext
except ImportError:
    _modp_ext = None

M = modp.DEFAULT_MODULUS


def random_workload(size: int, seed: int = 1):
    rng = random.Random(seed)
    rows = [[rng.randrange(M) for _ in range(size)] for _ in range(size)]
    vec = [rng.randrange(M) for _ in range(size)]
    return rows, vec


def frt_workload(n: int = 3, degree: int = 3, seed: int = 1):
    pres = quantum.presentation("frt", n)
    blocks = ideal.words_by_weight(pres, degree)
    by_block = defaultdict(list)
    for wt, row in ideal.padded_relations(pres, degree):
        by_block[wt].append(row)
    ev = ideal._Evaluator(modp.random_points(len(pres.vars), M, seed, 1)[0], M)
    out = []
    for wt, words in blocks.items():
        if wt in by_block:
            index = {w: t for t, w in enumerate(words)}
            out.append(([ideal._dense(r, index, ev, len(words)) for r in by_block[wt]], len(words)))
    return out


def bench(label, fn, repeat):
    best = min(timeit.repeat(fn, number=1, repeat=repeat))
    print(f"  {label:<10} {best * 1e3:10.2f} ms")
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=120)
    a = ap.parse_args(argv)
    backends = [("python", _modp_py)] + ([("compiled", _modp_ext)] if _modp_ext else [])
    if _modp_ext is None:
        print("compiled kernel not built; timing the fallback only")

    rows, vec = random_workload(a.size)
    blocks = frt_workload()
    nrows = sum(len(b) for b, _ in blocks)
    cases = [
        (f"rank_mod, random {a.size}x{a.size}", lambda k: k.rank_mod(rows, a.size, M)),
        (f"in_span_mod, random {a.size}x{a.size}", lambda k: k.in_span_mod(rows, vec, a.size, M)),
        (f"rank_mod, FRT n=3 degree 3 ({len(blocks)} blocks, {nrows} rows)",
         lambda k: [k.rank_mod(b, c, M) for b, c in blocks]),
    ]
    for title, job in cases:
        print(title)
        results = {name: job(k) for name, k in backends}
        if len(set(map(str, results.values()))) != 1:
            raise SystemExit(f"backends disagree: {results}")
        times = {name: bench(name, lambda k=k: job(k), a.repeat) for name, k in backends}
        if len(times) == 2:
            print(f"  speedup    {times['python'] / times['compiled']:10.1f}x")


if __name__ == "__main__":
    main()
