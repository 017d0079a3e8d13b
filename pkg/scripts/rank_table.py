"""Rank of the ring of cohomological functionals: closed form, orbit count, Burnside terms.

    python3 scripts/rank_table.py --max 6
"""

import argparse

from zigzag.formal import enumerate_rank, fixed_point_counts, rank_formula


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max", type=int, default=6)
    a = ap.parse_args()
    print(f"{'n':>2} {'formula':>8} {'orbits':>7}  fixed points (id, flip, antiflip, rotation)")
    for n in range(2, a.max + 1):
        print(f"{n:>2} {rank_formula(n):>8} {enumerate_rank(n):>7}  {fixed_point_counts(n)}")


if __name__ == "__main__":
    main()
