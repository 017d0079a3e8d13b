"""Formal combinatorics of zigzag multisets.

Rank of the universal ring of cohomological functionals, kernel elements of
the invariant map built from filling maps, and exact recovery of piece
counts from invariants.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Tuple

from .cohomology import FIELDS, invariant_bundle
from .complex import synthesize
from .decomposition import NINE, VAROUCHAS_MATRIX, predict_invariants
from .errors import DomainError, NotRealizableError, ValidationError
from .linalg import ExactMatrix, kernel_basis, rank
from .shapes import PIECES, EvenZigzag, OddZigzag, components, multiset


# ---------------------------------------------------------------- rank

def rank_formula(n: int) -> int:
    """Rank of the ring of functionals on ``n``-dimensional complexes.

    ``(4n³ - 4n)/3 + 5n² - 5 + [n even]``, all over 4, for ``n >= 2``; the
    rank is 2 for ``n = 1``.
    """
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    if n == 1:
        return 2
    val = (Fraction(4 * n ** 3 - 4 * n, 3) + 5 * n * n - 5 + (1 if n % 2 == 0 else 0)) / 4
    assert val.denominator == 1
    return int(val)


def box_shapes(n: int):
    """All zigzags inside ``[0, n]²`` missing the four corners."""
    corners = {(0, 0), (0, n), (n, 0), (n, n)}
    inside = lambda s: all(0 <= a <= n and 0 <= b <= n and (a, b) not in corners for a, b in components(s))
    shapes = []
    for p in range(n + 1):
        for q in range(n + 1):
            shapes += [OddZigzag(p, q, k) for k in range(2 * n + 1)]
            for l in range(1, n + 1):
                shapes += [EvenZigzag(p, q, 1, l), EvenZigzag(p, q, 2, l)]
    return [s for s in shapes if inside(s)]


def box_symmetries(n: int):
    """Symmetries of ``[0,n]²`` preserving the total-degree direction up to reversal."""
    return [
        lambda b: b,
        lambda b: (b[1], b[0]),
        lambda b: (n - b[1], n - b[0]),
        lambda b: (n - b[0], n - b[1]),
    ]


def shape_orbits(n: int):
    shapes = box_shapes(n)
    by_support = {frozenset(components(s)): s for s in shapes}
    if len(by_support) != len(shapes):
        raise AssertionError("zigzag shapes are not determined by their supports")
    seen, orbits = set(), []
    for s in shapes:
        if s in seen:
            continue
        orbit = {by_support[frozenset(map(g, components(s)))] for g in box_symmetries(n)}
        seen |= orbit
        orbits.append(orbit)
    return orbits


def enumerate_rank(n: int) -> int:
    """Orbit count of non-corner zigzags plus the two corner-dot orbits."""
    if not 2 <= n <= 6:
        raise DomainError(f"enumeration is supported for 2 <= n <= 6, got {n}")
    return len(shape_orbits(n)) + 2


def fixed_point_counts(n: int):
    """Number of non-corner zigzags fixed by each symmetry (Burnside check)."""
    shapes = box_shapes(n)
    out = []
    for g in box_symmetries(n):
        out.append(sum(1 for s in shapes if set(map(g, components(s))) == set(components(s))))
    return out


# ---------------------------------------------------------------- filling maps

@dataclass(frozen=True)
class FillingMap:
    """Finitely supported integer function on bidegrees with zero row and column sums.

    ``sign="-"`` requires support in ``p + q < k`` and ``sign="+"`` in
    ``p + q > k``.
    """

    k: int
    sign: str
    values: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        vals = {tuple(b): int(v) for b, v in self.values.items() if v}
        object.__setattr__(self, "values", vals)
        if self.sign not in ("+", "-"):
            raise ValidationError(f"sign must be '+' or '-', got {self.sign!r}")
        for (p, q) in vals:
            ok = p + q < self.k if self.sign == "-" else p + q > self.k
            if not ok:
                raise ValidationError(f"value at ({p},{q}) violates the support condition for sign {self.sign}")
        rows, cols = Counter(), Counter()
        for (p, q), v in vals.items():
            cols[p] += v
            rows[q] += v
        for p, s in sorted(cols.items()):
            if s:
                raise ValidationError(f"column p={p} sums to {s}")
        for q, s in sorted(rows.items()):
            if s:
                raise ValidationError(f"row q={q} sums to {s}")


def kernel_element(f: FillingMap):
    """``(positive, negative)`` multisets of odd zigzags of degree ``f.k``."""
    pos = multiset({OddZigzag(p, q, f.k): v for (p, q), v in f.values.items() if v > 0})
    neg = multiset({OddZigzag(p, q, f.k): -v for (p, q), v in f.values.items() if v < 0})
    return pos, neg


def random_filling_map(rng: random.Random, k: int, sign: str, rectangles: int = 3, spread: int = 3) -> FillingMap:
    """Sum of random signed rectangles ``e(p1,q1) - e(p1,q2) - e(p2,q1) + e(p2,q2)``."""
    vals = Counter()
    while not vals:
        for _ in range(rectangles):
            while True:
                p1, q1 = rng.randint(-spread, k + spread), rng.randint(-spread, k + spread)
                p2, q2 = p1 + rng.randint(1, spread), q1 + rng.randint(1, spread)
                # only the extreme corner can break the support condition
                if (sign == "-" and p2 + q2 < k) or (sign == "+" and p1 + q1 > k):
                    break
            c = rng.choice([-2, -1, 1, 2])
            for b, s in (((p1, q1), 1), ((p1, q2), -1), ((p2, q1), -1), ((p2, q2), 1)):
                vals[b] += c * s
        vals = Counter({b: v for b, v in vals.items() if v})
    return FillingMap(k, sign, dict(vals))


CHI_FIELDS = tuple(f for f in FIELDS if f != "bigolin")


def chi_difference(pos, neg, computed=True):
    """Invariant bundles of both sides (Bigolin numbers excluded) and whether they agree."""
    if computed:
        bp = invariant_bundle(synthesize(pos), bigolin_numbers=False)
        bn = invariant_bundle(synthesize(neg), bigolin_numbers=False)
    else:
        bp, bn = predict_invariants(pos, None), predict_invariants(neg, None)
        bp.bigolin, bn.bigolin = {}, {}
    return bp, bn, not bp.differences(bn, CHI_FIELDS)


# ---------------------------------------------------------------- fixtures

def _ms(*shapes):
    return multiset(list(shapes))


def O(p, q, k):
    return OddZigzag(p, q, k)


def H(p, q, l):
    return EvenZigzag(p, q, 1, l)


def V(p, q, l):
    return EvenZigzag(p, q, 2, l)


def fixtures() -> dict:
    """Named multisets used as worked examples."""
    return {
        "exdc": _ms(O(0, 1, 3), O(3, 1, 3), O(3, 1, 4)),
        "cut_example": _ms(O(4, 4, 5)),
        "T_plus": _ms(O(2, 2, 2), O(1, 1, 4), O(1, 1, 2), O(2, 1, 3), O(1, 2, 3), O(2, 2, 4)),
        "T_minus": _ms(O(1, 2, 2), O(2, 1, 2), O(1, 2, 4), O(2, 1, 4), O(2, 2, 3), O(1, 1, 3)),
        "fill_ex_pos": _ms(O(1, 0, 3), O(0, 1, 3)),
        "fill_ex_neg": _ms(O(0, 0, 3), O(1, 1, 3)),
        "L1": _ms(V(0, 1, 1), H(0, 1, 1), V(1, 0, 1), H(1, 0, 1), H(1, 3, 1), V(2, 2, 1), H(2, 2, 1), V(3, 1, 1)),
        "R1": _ms(H(0, 1, 2), V(1, 0, 2), H(1, 3, 2), V(3, 1, 2)),
        "L2": _ms(H(0, 2, 1), H(1, 2, 1), V(1, 2, 1), V(1, 1, 1), H(1, 1, 1), H(2, 1, 1), V(2, 1, 1), V(2, 0, 1)),
        "R2": _ms(H(0, 2, 2), V(2, 0, 2), H(1, 2, 2), V(2, 1, 2)),
        "dim4_left": _ms(H(0, 3, 2), V(2, 2, 2), V(3, 0, 2), H(2, 2, 2), V(2, 1, 2), V(3, 1, 2), H(1, 2, 2), H(1, 3, 2)),
        "dim4_right": _ms(H(0, 3, 3), V(3, 0, 3), H(1, 3, 3), V(3, 1, 3), H(1, 2, 1), H(2, 2, 1), V(2, 2, 1), V(2, 1, 1)),
    }


FILL_EX = FillingMap(3, "-", {(1, 0): 1, (0, 1): 1, (0, 0): -1, (1, 1): -1})


# ---------------------------------------------------------------- piece counts

def solve_piece_counts(nine: dict) -> dict:
    """Unique piece-count vector (PIECES order) realizing nine invariant values.

    ``nine`` maps ``bott_chern, aeppli, dolbeault, A, ..., F`` to integers.
    """
    try:
        b = [int(nine[name]) for name in NINE]
    except KeyError as e:
        raise ValidationError(f"missing invariant {e.args[0]}") from None
    aug = ExactMatrix.from_rows([list(row) + [-x] for row, x in zip(VAROUCHAS_MATRIX, b)])
    K = kernel_basis(aug)
    # the 9x7 matrix has full column rank, so the kernel is at most a line
    sol = next((K.column(j) for j in range(K.cols) if K[7, j]), None)
    if sol is None:
        raise NotRealizableError("the nine values are inconsistent")
    scale = sol[7]
    x = [(v / scale) for v in sol[:7]]
    if any(v.im or v.re.denominator != 1 or v.re < 0 for v in x):
        raise NotRealizableError(f"solution {[str(v) for v in x]} is not a vector of counts")
    return {role.value: int(v.re) for role, v in zip(PIECES, x)}


def varouchas_matrix_rank() -> int:
    return rank(ExactMatrix.from_rows(VAROUCHAS_MATRIX))
