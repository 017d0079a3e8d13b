"""Recover the multiset of zigzags and squares of a double complex.

Squares are counted by ranks of ``∂∂̄``, even zigzags by ranks of the
differentials of the two Frölicher spectral sequences and odd zigzags by
an alternating sum of second differences of Bigolin numbers.
"""

from __future__ import annotations

from collections import Counter
from typing import Optional

from .cohomology import (
    VAROUCHAS_GROUPS, InvariantBundle, Window, _div, bigolin_reduced, frolicher,
    invariant_bundle, real_form,
)
from .complex import DoubleComplex, transpose
from .errors import IntegrityError
from .shapes import (
    PIECES, EvenZigzag, OddZigzag, Role, Square, expand_shape, footprint, piece_counts, sort_key,
)

# rows: Bott-Chern, Aeppli, Dolbeault, then Varouchas A..F; columns in PIECES order
VAROUCHAS_MATRIX = (
    (1, 1, 1, 1, 0, 0, 0),
    (1, 0, 0, 0, 1, 1, 1),
    (1, 0, 0, 1, 0, 1, 0),
    (0, 1, 0, 0, 0, 0, 0),
    (0, 1, 0, 1, 0, 0, 0),
    (0, 0, 0, 0, 1, 0, 1),
    (0, 1, 1, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 1, 1),
    (0, 0, 0, 0, 0, 0, 1),
)
NINE = ("bott_chern", "aeppli", "dolbeault", *VAROUCHAS_GROUPS)


def _check(n, what):
    if n < 0:
        raise IntegrityError(f"negative multiplicity for {what}")
    return n


def square_mults(C: DoubleComplex) -> Counter:
    """Squares with lower-left corner ``(p, q)``: rank of ``∂∂̄`` there."""
    rf = real_form(C)
    out = Counter()
    for b in C.support:
        n = _div(rf, rf.r_hv(b))
        if n:
            out[Square(*b)] = n
    return out


def even_horizontal_mults(C: DoubleComplex) -> Counter:
    """``Z^{a,b}_{1,l}`` counted by the rank of ``d_l`` at ``(a, b)``."""
    hull = C.hull()
    out = Counter()
    if hull is None:
        return out
    for l in range(1, hull[1] - hull[0] + 1):
        for (a, b) in C.support:
            rk = frolicher(C, "std", l, a, b)[1]
            if rk:
                out[EvenZigzag(a, b, 1, l)] = rk
    return out


def even_vertical_mults(C: DoubleComplex) -> Counter:
    """Vertical even zigzags, via the horizontal count of the transpose."""
    T = C._cache.get("transpose")
    if T is None:
        T = C._cache["transpose"] = transpose(C)
    return Counter({EvenZigzag(s.q, s.p, 2, s.l): n for s, n in even_horizontal_mults(T).items()})


def odd_mults(C: DoubleComplex) -> Counter:
    """Odd zigzags ``Z^{p,q}_{k+1}`` as ``Σ_j (-1)^j h̃^{k-j}_{p,q}``."""
    hull = C.hull()
    out = Counter()
    if hull is None:
        return out
    ks = [p + q for p, q in C.support]
    kmin, kmax = min(ks), max(ks)
    for p in range(hull[0], hull[1] + 1):
        for q in range(hull[2], hull[3] + 1):
            partial = 0
            for k in range(kmin - 1, kmax):
                # partial = Σ_{j>=0} (-1)^j h̃^{k-j}
                partial = bigolin_reduced(C, k, p, q) - partial
                if _check(partial, f"odd zigzag ({p},{q},{k + 1})"):
                    out[OddZigzag(p, q, k + 1)] = partial
    return out


def decompose(C: DoubleComplex) -> Counter:
    """Multiset of indecomposables isomorphic to ``C``.

    Raises :class:`IntegrityError` if the recovered shapes do not account for
    exactly the dimensions of ``C``.
    """
    m = Counter()
    for part in (square_mults(C), even_horizontal_mults(C), even_vertical_mults(C), odd_mults(C)):
        m.update(part)
    fp = footprint(m)
    if dict(fp) != C.dims:
        bad = sorted(b for b in set(fp) | set(C.dims) if fp.get(b, 0) != C.dims.get(b, 0))
        raise IntegrityError(f"decomposition does not account for the dimensions at {bad}")
    return m


def sorted_shapes(m):
    return sorted(m, key=sort_key)


# ---------------------------------------------------------------- predictions

def _bigolin_contribution(s, k, p, q) -> int:
    if isinstance(s, Square):
        return 0
    if isinstance(s, OddZigzag):
        if s.k == k and s.p <= p and s.q <= q:
            return 1
        return int(s.k == k + 1 and s.p >= p + 1 and s.q >= q + 1)
    if s.p + s.q != k:
        return 0
    if s.orient == 1:
        return int(s.p <= p < s.p + s.l)
    return int(s.q <= q < s.q + s.l)


def _frolicher_entries(m, filtration):
    pages = {}
    last = 0
    for s in m:
        if isinstance(s, EvenZigzag) and s.orient == (1 if filtration == "std" else 2):
            last = max(last, s.l)
    for s, n in m.items():
        if isinstance(s, OddZigzag):
            wanted = (Role.DOT, Role.IN_H, Role.OUT_H) if filtration == "std" else (Role.DOT, Role.IN_V, Role.OUT_V)
            b = next(c for c, r in expand_shape(s) if r in wanted)
            for r in range(1, last + 2):
                d, rk = pages.get((r, *b), (0, 0))
                pages[(r, *b)] = (d + n, rk)
        elif isinstance(s, EvenZigzag) and s.orient == (1 if filtration == "std" else 2):
            ch = s.chain()
            start, end = (ch[0], ch[-1]) if s.orient == 1 else (ch[-1], ch[0])
            for r in range(1, s.l + 1):
                d, rk = pages.get((r, *start), (0, 0))
                pages[(r, *start)] = (d + n, rk + (n if r == s.l else 0))
                d, rk = pages.get((r, *end), (0, 0))
                pages[(r, *end)] = (d + n, rk)
    return {(filtration, *key): val for key, val in pages.items()}


def predict_invariants(m, window: Optional[Window] = None) -> InvariantBundle:
    """Invariant bundle of ``synthesize(m)`` obtained by counting shapes."""
    if window is None:
        window = Window.around(footprint(m))
    betti, bigolin = Counter(), Counter()
    counts = {name: Counter() for name in NINE}
    conj = Counter()
    for b, vec in piece_counts(m).items():
        for name, row in zip(NINE, VAROUCHAS_MATRIX):
            counts[name][b] += sum(x * y for x, y in zip(row, vec))
        conj[b] += vec[PIECES.index(Role.DOT)] + vec[PIECES.index(Role.IN_V)] + vec[PIECES.index(Role.OUT_V)]
    for s, n in m.items():
        if isinstance(s, OddZigzag):
            betti[s.k] += n
    if window is not None:
        for (k, p, q) in window.indices():
            c = sum(n * _bigolin_contribution(s, k, p, q) for s, n in m.items())
            if c:
                bigolin[(k, p, q)] = c
    clean = lambda d: {k: v for k, v in d.items() if v}
    return InvariantBundle(
        betti=clean(betti),
        dolbeault=clean(counts["dolbeault"]),
        conj_dolbeault=clean(conj),
        bott_chern=clean(counts["bott_chern"]),
        aeppli=clean(counts["aeppli"]),
        varouchas=clean({(g, *b): n for g in VAROUCHAS_GROUPS for b, n in counts[g].items()}),
        frolicher={**_frolicher_entries(m, "std"), **_frolicher_entries(m, "conj")},
        bigolin=clean(bigolin),
        window=window,
    )


# ---------------------------------------------------------------- comparisons

def zigzag_part(m) -> Counter:
    return Counter({s: n for s, n in m.items() if not isinstance(s, Square)})


def is_isomorphic(C1: DoubleComplex, C2: DoubleComplex) -> bool:
    return decompose(C1) == decompose(C2)


def is_quasi_isomorphic(C1: DoubleComplex, C2: DoubleComplex) -> bool:
    """Same zigzags with multiplicity; squares are ignored."""
    return zigzag_part(decompose(C1)) == zigzag_part(decompose(C2))


LOCAL_FIELDS = ("dolbeault", "bott_chern", "aeppli", "varouchas")


def is_locally_similar(C1: DoubleComplex, C2: DoubleComplex) -> bool:
    """Same Dolbeault, Bott-Chern, Aeppli and Varouchas numbers everywhere."""
    b1 = invariant_bundle(C1, bigolin_numbers=False)
    b2 = invariant_bundle(C2, bigolin_numbers=False)
    return not b1.differences(b2, LOCAL_FIELDS)
