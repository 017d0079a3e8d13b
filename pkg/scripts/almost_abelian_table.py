"""Zigzag counts of almost abelian Lie algebras against the sl2 prediction.

    python3 scripts/almost_abelian_table.py 2 3 2,2 1,2 4
"""

import sys
import time
from collections import Counter

from zigzag.decomposition import decompose
from zigzag.lie import AlmostAbelianSpec, almost_abelian, ce_complex, dec_ab_predict
from zigzag.shapes import Square


def summary(m):
    c = Counter()
    for s, n in m.items():
        c["squares" if isinstance(s, Square) else f"length {s.length}"] += n
    return dict(sorted(c.items()))


def main(argv):
    blocks = argv or ["1", "2", "3", "2,2", "1,2", "4"]
    print(f"{'ks':<8} {'dim':>5} {'time':>7}  match  counts")
    for item in blocks:
        s = AlmostAbelianSpec(tuple(int(x) for x in item.split(",")))
        t = time.perf_counter()
        C = ce_complex(almost_abelian(s))
        m = decompose(C)
        dt = time.perf_counter() - t
        print(f"{item:<8} {C.total_dim:>5} {dt:>6.2f}s  {str(m == dec_ab_predict(s)):<5}  {summary(m)}")


if __name__ == "__main__":
    main(sys.argv[1:])
