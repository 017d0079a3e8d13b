"""Indecomposable double complexes: zigzags and squares.

Conventions: ``p`` is the horizontal (``∂``) degree, ``q`` the vertical
(``∂̄``) degree, and every arrow points right or up.

* ``OddZigzag(p, q, k)``: total degree ``k`` is the degree holding the
  majority of components.  If ``p + q == k`` it is a dot at ``(p, q)``; if
  ``p + q < k`` it looks down and ``(p, q)`` is the lower-left corner of its
  bounding box; if ``p + q > k`` it looks up and ``(p, q)`` is the upper-right
  corner.  Its length is ``2|k - p - q| + 1``.
* ``EvenZigzag(p, q, 1, l)``: horizontal ends, components
  ``(p, q), (p+1, q), (p+1, q-1), ..., (p+l, q-l+1)``.
* ``EvenZigzag(p, q, 2, l)``: the transpose picture, vertical ends, with
  bottom component ``(p, q)``.
* ``Square(p, q)``: lower-left corner ``(p, q)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Union

from .errors import ValidationError


class Role(str, Enum):
    """Local shape of a zigzag component, or a corner of a square."""

    DOT = "dot"
    IN_BOTH = "in-both"
    IN_V = "in-v"
    IN_H = "in-h"
    OUT_V = "out-v"
    OUT_H = "out-h"
    OUT_BOTH = "out-both"
    SQ_LL = "square-ll"
    SQ_LR = "square-lr"
    SQ_UL = "square-ul"
    SQ_UR = "square-ur"


# column order of the piece-count vector
PIECES = (Role.DOT, Role.IN_BOTH, Role.IN_V, Role.IN_H, Role.OUT_V, Role.OUT_H, Role.OUT_BOTH)


@dataclass(frozen=True, order=True)
class OddZigzag:
    p: int
    q: int
    k: int

    kind = "odd"

    @property
    def degree(self) -> int:
        return self.k

    @property
    def length(self) -> int:
        return 2 * abs(self.k - self.p - self.q) + 1

    @property
    def k_or_l(self) -> int:
        return self.k

    def chain(self):
        p, q, k = self.p, self.q, self.k
        m = k - p - q
        if m == 0:
            return [(p, q)]
        out = []
        if m > 0:
            for i in range(m + 1):
                out.append((p + i, q + m - i))
                if i < m:
                    out.append((p + i + 1, q + m - i))
        else:
            m = -m
            for i in range(m + 1):
                out.append((p - m + i, q - i))
                if i < m:
                    out.append((p - m + i, q - i - 1))
        return out

    def __str__(self):
        return f"Z^{{{self.p},{self.q}}}_{self.k}"


@dataclass(frozen=True, order=True)
class EvenZigzag:
    p: int
    q: int
    orient: int
    l: int

    def __post_init__(self):
        if self.orient not in (1, 2):
            raise ValidationError(f"even zigzag orientation must be 1 or 2, got {self.orient}")
        if self.l < 1:
            raise ValidationError(f"even zigzag length parameter must be >= 1, got {self.l}")

    @property
    def kind(self):
        return "even_h" if self.orient == 1 else "even_v"

    @property
    def degree(self) -> int:
        return self.p + self.q

    @property
    def length(self) -> int:
        return 2 * self.l

    @property
    def k_or_l(self) -> int:
        return self.l

    def chain(self):
        p, q, l = self.p, self.q, self.l
        out = []
        if self.orient == 1:
            for i in range(l):
                out += [(p + i, q - i), (p + i + 1, q - i)]
        else:
            for i in reversed(range(l)):
                out += [(p - i, q + i + 1), (p - i, q + i)]
        return out

    def __str__(self):
        return f"Z^{{{self.p},{self.q}}}_{{{self.orient},{self.l}}}"


@dataclass(frozen=True, order=True)
class Square:
    p: int
    q: int

    kind = "square"

    @property
    def degree(self) -> int:
        return self.p + self.q

    @property
    def length(self) -> int:
        return 4

    @property
    def k_or_l(self) -> int:
        return 0

    def __str__(self):
        return f"S^{{{self.p},{self.q}}}"


Shape = Union[OddZigzag, EvenZigzag, Square]
KIND_ORDER = {"odd": 0, "even_h": 1, "even_v": 2, "square": 3}


def sort_key(s: Shape):
    """Canonical order: total degree, then p, q, type, length parameter."""
    return (s.degree, s.p, s.q, KIND_ORDER[s.kind], s.k_or_l)


def make_shape(kind: str, p: int, q: int, k_or_l: int = 0) -> Shape:
    if kind == "odd":
        return OddZigzag(p, q, k_or_l)
    if kind == "even_h":
        return EvenZigzag(p, q, 1, k_or_l)
    if kind == "even_v":
        return EvenZigzag(p, q, 2, k_or_l)
    if kind == "square":
        return Square(p, q)
    raise ValidationError(f"unknown shape type {kind!r}")


def arrows(shape: Shape):
    """Arrows ``(source, target, sign)`` between components; signs are ±1."""
    if isinstance(shape, Square):
        p, q = shape.p, shape.q
        return [((p, q), (p + 1, q), 1), ((p, q), (p, q + 1), 1),
                ((p, q + 1), (p + 1, q + 1), 1), ((p + 1, q), (p + 1, q + 1), -1)]
    ch = shape.chain()
    out = []
    for a, b in zip(ch, ch[1:]):
        d = (b[0] - a[0], b[1] - a[1])
        out.append((a, b, 1) if d in ((1, 0), (0, 1)) else (b, a, 1))
    return out


def expand_shape(shape: Shape):
    """Components ``[(bidegree, Role)]`` from top-left to bottom-right."""
    if isinstance(shape, Square):
        p, q = shape.p, shape.q
        return [((p, q + 1), Role.SQ_UL), ((p + 1, q + 1), Role.SQ_UR),
                ((p, q), Role.SQ_LL), ((p + 1, q), Role.SQ_LR)]
    ch = shape.chain()
    if len(ch) == 1:
        return [(ch[0], Role.DOT)]
    outs = {c: set() for c in ch}
    ins = {c: set() for c in ch}
    for a, b, _ in arrows(shape):
        direction = "h" if a[1] == b[1] else "v"
        outs[a].add(direction)
        ins[b].add(direction)
    res = []
    for c in ch:
        o, i = outs[c], ins[c]
        if o:
            role = Role.OUT_BOTH if len(o) == 2 else (Role.OUT_H if "h" in o else Role.OUT_V)
        else:
            role = Role.IN_BOTH if len(i) == 2 else (Role.IN_H if "h" in i else Role.IN_V)
        res.append((c, role))
    return res


def components(shape: Shape):
    return [c for c, _ in expand_shape(shape)]


def multiset(items: Iterable = ()) -> Counter:
    """A multiset of shapes: ``Counter`` with positive multiplicities only."""
    c = Counter()
    if isinstance(items, dict):
        items = items.items()
    else:
        items = ((s, 1) for s in items)
    for s, n in items:
        c[s] += n
    for s in [s for s, n in c.items() if n == 0]:
        del c[s]
    if any(n < 0 for n in c.values()):
        raise ValidationError("negative multiplicity in a multiset")
    return c


def footprint(m) -> Counter:
    """Dimension per bidegree of the complex a multiset describes."""
    dims = Counter()
    for s, n in m.items():
        for c in components(s):
            dims[c] += n
    return dims


def transpose_shape(s: Shape) -> Shape:
    if isinstance(s, Square):
        return Square(s.q, s.p)
    if isinstance(s, OddZigzag):
        return OddZigzag(s.q, s.p, s.k)
    return EvenZigzag(s.q, s.p, 3 - s.orient, s.l)


def piece_counts(m) -> dict:
    """``{bidegree: [7 counts in PIECES order]}`` for the zigzags of ``m``."""
    out = {}
    for s, n in m.items():
        if isinstance(s, Square):
            continue
        for c, role in expand_shape(s):
            out.setdefault(c, [0] * 7)[PIECES.index(role)] += n
    return out
