"""Scan the six-dimensional nilpotent family: squares vs the closed-form criterion.

    python3 scripts/six_dim_scan.py --samples 100 --seed 1
"""

import argparse
import random

from zigzag.cohomology import invariant_bundle
from zigzag.decomposition import decompose, square_mults
from zigzag.lie import SixDimParams, ce_complex, no_square_criterion, no_square_value, six_dim_structure

VALUES = ["0", "1", "-1", "2", "1/2", "i", "-i", "1/2+1/2*i", "1+i", "-1/2+i"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=60)
    ap.add_argument("--seed", type=int, default=1)
    a = ap.parse_args()
    rng = random.Random(a.seed)
    agree = 0
    shapes = {}
    for _ in range(a.samples):
        prm = SixDimParams(rng.randint(0, 1), rng.randint(0, 1), *(rng.choice(VALUES) for _ in range(4)))
        C = ce_complex(six_dim_structure(prm))
        no_sq = not square_mults(C)
        agree += no_sq == no_square_criterion(prm)
        key = tuple(sorted((str(s), n) for s, n in decompose(C).items()))
        shapes.setdefault(key, prm)
    print(f"criterion agrees with rank(∂∂̄) on {agree}/{a.samples} samples")
    print(f"{len(shapes)} distinct decompositions; representatives:")
    for key, prm in shapes.items():
        b = invariant_bundle(ce_complex(six_dim_structure(prm)), bigolin_numbers=False)
        betti = [b.betti.get(k, 0) for k in range(7)]
        print(f"  eps={prm.eps} rho={prm.rho} A={prm.A} B={prm.B} C={prm.C} D={prm.D}"
              f"  value={no_square_value(prm)}  betti={betti}  shapes={sum(n for _, n in key)}")


if __name__ == "__main__":
    main()
