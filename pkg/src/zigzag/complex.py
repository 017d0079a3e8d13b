"""Bounded double complexes over Q(i) and the operations on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .errors import ValidationError
import random

from .linalg import ONE, ExactMatrix, Scalar
from .shapes import Square, arrows, components, sort_key

Bidegree = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class DoubleComplex:
    """Finite-dimensional bigraded space with ``∂`` of bidegree (1,0) and ``∂̄`` of (0,1).

    ``del_h[(p, q)]`` is the matrix of ``∂: A^{p,q} -> A^{p+1,q}`` (target
    rows, source columns) and ``del_v[(p, q)]`` that of ``∂̄: A^{p,q} -> A^{p,q+1}``.
    Missing maps are zero.  Construction checks matrix sizes; the relations
    ``∂² = ∂̄² = ∂∂̄ + ∂̄∂ = 0`` are checked by :func:`validate`.
    """

    dims: Dict[Bidegree, int]
    del_h: Dict[Bidegree, ExactMatrix] = field(default_factory=dict)
    del_v: Dict[Bidegree, ExactMatrix] = field(default_factory=dict)

    def __post_init__(self):
        dims = {tuple(b): int(n) for b, n in self.dims.items() if n}
        if any(n < 0 for n in dims.values()):
            raise ValidationError("negative dimension")
        object.__setattr__(self, "dims", dims)
        for name, step in (("del_h", (1, 0)), ("del_v", (0, 1))):
            maps = {}
            for b, m in getattr(self, name).items():
                b = tuple(b)
                src = dims.get(b, 0)
                tgt = dims.get((b[0] + step[0], b[1] + step[1]), 0)
                if m.shape != (tgt, src):
                    raise ValidationError(f"{name} at {b}: expected {tgt}x{src} matrix, got {m.rows}x{m.cols}")
                if src and tgt and not m.is_zero():
                    maps[b] = m
            object.__setattr__(self, name, maps)
        object.__setattr__(self, "_cache", {})

    def dim(self, p, q) -> int:
        return self.dims.get((p, q), 0)

    def h(self, p, q) -> ExactMatrix:
        return self.del_h.get((p, q)) or ExactMatrix.zeros(self.dim(p + 1, q), self.dim(p, q))

    def v(self, p, q) -> ExactMatrix:
        return self.del_v.get((p, q)) or ExactMatrix.zeros(self.dim(p, q + 1), self.dim(p, q))

    @property
    def support(self):
        return sorted(self.dims)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def hull(self):
        """``(pmin, pmax, qmin, qmax)`` of the support, or ``None`` if empty."""
        if not self.dims:
            return None
        ps = [b[0] for b in self.dims]
        qs = [b[1] for b in self.dims]
        return (min(ps), max(ps), min(qs), max(qs))

    def is_real(self) -> bool:
        return all(m.is_real() for m in (*self.del_h.values(), *self.del_v.values()))

    def __eq__(self, o):
        if not isinstance(o, DoubleComplex):
            return NotImplemented
        return (self.dims, self.del_h, self.del_v) == (o.dims, o.del_h, o.del_v)

    __hash__ = None

    def __repr__(self):
        return f"DoubleComplex(dims={dict(sorted(self.dims.items()))})"


@dataclass(frozen=True)
class Violation:
    """A failed relation: ``kind`` in {"del_h^2", "del_v^2", "anticommute"} at the source bidegree."""

    kind: str
    bidegree: Bidegree
    detail: str = ""

    def __str__(self):
        return f"{self.kind} != 0 at {self.bidegree}{': ' + self.detail if self.detail else ''}"


def validate(C: DoubleComplex) -> List[Violation]:
    """All violated relations; an empty list means ``C`` is a double complex."""
    out = []
    for (p, q) in C.support:
        if C.dim(p + 2, q) and not (C.h(p + 1, q) @ C.h(p, q)).is_zero():
            out.append(Violation("del_h^2", (p, q)))
        if C.dim(p, q + 2) and not (C.v(p, q + 1) @ C.v(p, q)).is_zero():
            out.append(Violation("del_v^2", (p, q)))
        if C.dim(p + 1, q + 1):
            s = C.v(p + 1, q) @ C.h(p, q) + C.h(p, q + 1) @ C.v(p, q)
            if not s.is_zero():
                out.append(Violation("anticommute", (p, q), f"{len(s.nonzero)} nonzero entries"))
    return out


class _Builder:
    """Accumulates basis vectors and arrow entries, then emits a complex."""

    def __init__(self):
        self.dims = {}
        self.h = {}
        self.v = {}

    def new(self, b) -> int:
        i = self.dims.get(b, 0)
        self.dims[b] = i + 1
        return i

    def arrow(self, src, i, tgt, j, coeff):
        table = self.h if tgt[1] == src[1] else self.v
        table.setdefault(src, {})[(j, i)] = coeff

    def build(self) -> DoubleComplex:
        def mats(table, step):
            out = {}
            for b, data in table.items():
                t = (b[0] + step[0], b[1] + step[1])
                out[b] = ExactMatrix.from_sparse(self.dims[t], self.dims[b], data)
            return out
        return DoubleComplex(dict(self.dims), mats(self.h, (1, 0)), mats(self.v, (0, 1)))


def synthesize(m) -> DoubleComplex:
    """Direct sum of the shapes in multiset ``m``, in canonical order, arrows ±1."""
    bld = _Builder()
    for s in sorted(m, key=sort_key):
        for _ in range(m[s]):
            idx = {c: bld.new(c) for c in components(s)}
            for a, b, sign in arrows(s):
                bld.arrow(a, idx[a], b, idx[b], ONE if sign > 0 else -ONE)
    return bld.build()


def _block_diag(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    data = dict(a.nonzero)
    data.update({(i + a.rows, j + a.cols): x for (i, j), x in b.nonzero.items()})
    return ExactMatrix.from_sparse(a.rows + b.rows, a.cols + b.cols, data)


def direct_sum(C1: DoubleComplex, C2: DoubleComplex) -> DoubleComplex:
    """Block-diagonal sum; ``C1``'s basis comes first in every bidegree."""
    dims = {b: C1.dim(*b) + C2.dim(*b) for b in set(C1.dims) | set(C2.dims)}
    keys_h = set(C1.del_h) | set(C2.del_h)
    keys_v = set(C1.del_v) | set(C2.del_v)
    return DoubleComplex(
        dims,
        {b: _block_diag(C1.h(*b), C2.h(*b)) for b in keys_h},
        {b: _block_diag(C1.v(*b), C2.v(*b)) for b in keys_v},
    )


_CUT_KEEP = {
    "above": lambda b, P: b[1] <= P,
    "below": lambda b, P: b[1] > P,
    "right": lambda b, P: b[0] <= P,
    "left": lambda b, P: b[0] > P,
}


def cut(C: DoubleComplex, side: str, degree: int) -> DoubleComplex:
    """Remove a half-plane.

    ``above P`` keeps rows ``q <= P``, ``below P`` keeps ``q > P``,
    ``right P`` keeps columns ``p <= P`` and ``left P`` keeps ``p > P``.
    """
    try:
        keep = _CUT_KEEP[side]
    except KeyError:
        raise ValidationError(f"cut side must be one of {sorted(_CUT_KEEP)}, got {side!r}") from None
    dims = {b: n for b, n in C.dims.items() if keep(b, degree)}
    h = {b: m for b, m in C.del_h.items() if b in dims and (b[0] + 1, b[1]) in dims}
    v = {b: m for b, m in C.del_v.items() if b in dims and (b[0], b[1] + 1) in dims}
    return DoubleComplex(dims, h, v)


def transpose(C: DoubleComplex) -> DoubleComplex:
    """Swap the bidegrees and the roles of ``∂`` and ``∂̄``.

    The anticommutation relation is symmetric in the two differentials, so no
    sign change is needed.
    """
    sw = lambda b: (b[1], b[0])
    return DoubleComplex(
        {sw(b): n for b, n in C.dims.items()},
        {sw(b): m for b, m in C.del_v.items()},
        {sw(b): m for b, m in C.del_h.items()},
    )


def change_basis(C: DoubleComplex, P: dict, P_inv: dict) -> DoubleComplex:
    """Conjugate by invertible matrices ``P[b]`` (with inverses ``P_inv[b]``)."""
    def mv(b, m, t):
        return P.get(t, ExactMatrix.identity(C.dim(*t))) @ m @ P_inv.get(b, ExactMatrix.identity(C.dim(*b)))
    return DoubleComplex(
        dict(C.dims),
        {b: mv(b, m, (b[0] + 1, b[1])) for b, m in C.del_h.items()},
        {b: mv(b, m, (b[0], b[1] + 1)) for b, m in C.del_v.items()},
    )


def square_complex(p=0, q=0) -> DoubleComplex:
    return synthesize({Square(p, q): 1})


def random_unimodular(n: int, rng: random.Random, steps: int = None, gaussian: bool = False):
    """Random invertible ``n x n`` matrix and its inverse, from elementary row operations."""
    P = [[Scalar(int(i == j)) for j in range(n)] for i in range(n)]
    Q = [[Scalar(int(i == j)) for j in range(n)] for i in range(n)]
    coeffs = [1, -1, 2, -2, Scalar("1/2"), 3]
    if gaussian:
        coeffs += [Scalar(0, 1), Scalar(1, -1)]
    for _ in range(steps if steps is not None else 3 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = Scalar.parse(rng.choice(coeffs))
        # row_i += c row_j on P; the inverse gets column_j -= c column_i
        P[i] = [a + c * b for a, b in zip(P[i], P[j])]
        for r in Q:
            r[j] = r[j] - c * r[i]
    return ExactMatrix.from_rows(P, n), ExactMatrix.from_rows(Q, n)


def random_basis_change(C: DoubleComplex, rng: random.Random, gaussian: bool = False) -> DoubleComplex:
    """An isomorphic copy of ``C`` in randomly changed bases."""
    P, Q = {}, {}
    for b, n in C.dims.items():
        P[b], Q[b] = random_unimodular(n, rng, gaussian=gaussian)
    return change_basis(C, P, Q)
