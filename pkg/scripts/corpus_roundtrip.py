"""Decompose a seeded corpus of random multisets and check every invariant prediction.

    python3 scripts/corpus_roundtrip.py --count 200 --seed 2024

Parallelism follows ZIGZAG_JOBS.
"""

import argparse
import random
import time

from zigzag.cli import random_multiset
from zigzag.cohomology import invariant_bundle
from zigzag.complex import random_basis_change, synthesize
from zigzag.decomposition import decompose, predict_invariants
from zigzag.parallel import jobs, pmap


def check(args):
    m, seed = args
    C = random_basis_change(synthesize(m), random.Random(seed))
    t = time.perf_counter()
    ok_dec = decompose(C) == m
    ok_inv = predict_invariants(m) == invariant_bundle(C)
    return ok_dec, ok_inv, C.total_dim, time.perf_counter() - t


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--size", type=int, default=4)
    ap.add_argument("--max-shapes", type=int, default=40)
    a = ap.parse_args()
    rng = random.Random(a.seed)
    items = [(random_multiset(rng, a.size, a.max_shapes), rng.randrange(10 ** 9)) for _ in range(a.count)]
    t0 = time.perf_counter()
    res = pmap(check, items)
    dec = sum(r[0] for r in res)
    inv = sum(r[1] for r in res)
    dims = [r[2] for r in res]
    print(f"{a.count} complexes, total dimension {min(dims)}..{max(dims)}, {jobs()} jobs")
    print(f"decomposition recovered: {dec}/{a.count}")
    print(f"invariants predicted:    {inv}/{a.count}")
    print(f"slowest complex {max(r[3] for r in res):.2f}s, wall time {time.perf_counter() - t0:.1f}s")
    return 0 if dec == inv == a.count else 1


if __name__ == "__main__":
    raise SystemExit(main())
