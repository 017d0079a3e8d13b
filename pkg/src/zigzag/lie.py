"""Chevalley-Eilenberg double complexes of nilpotent Lie algebras with a complex structure.

A Lie algebra of complex dimension ``n`` is given by structure equations
``dω^i`` in a basis ``ω^1..ω^n`` of ``(1,0)``-forms.  Internally generators
``0..n-1`` are the ``ω^i`` and ``n..2n-1`` their conjugates; a wedge monomial
is a sorted index tuple, so holomorphic factors come first.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Dict, Tuple

from .complex import DoubleComplex, validate
from .errors import DomainError, ValidationError
from .linalg import ExactMatrix, Scalar
from .shapes import OddZigzag, Square, multiset

Pair = Tuple[int, int]


@dataclass(frozen=True)
class StructureEquations:
    """``d[i] = {(a, b): c}`` meaning ``dω^i = Σ c e_a ∧ e_b`` with ``a < b``."""

    n: int
    d: Dict[int, Dict[Pair, Scalar]] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for i, terms in self.d.items():
            if not 0 <= i < self.n:
                raise ValidationError(f"generator index {i} out of range")
            acc = {}
            for (a, b), c in terms.items():
                c = Scalar.parse(c)
                if a == b or not c:
                    continue
                if a > b:
                    a, b, c = b, a, -c
                if not (0 <= a < 2 * self.n and 0 <= b < 2 * self.n):
                    raise ValidationError(f"index pair ({a}, {b}) out of range")
                if a >= self.n:
                    raise ValidationError(f"dω^{i + 1} has a (0,2) component: the structure is not integrable")
                acc[(a, b)] = acc.get((a, b), Scalar(0)) + c
            clean[i] = {k: v for k, v in acc.items() if v}
        object.__setattr__(self, "d", clean)

    def generator_d(self, g: int) -> Dict[Pair, Scalar]:
        """``d`` of generator ``g``; conjugates use ``conj(ω^a ∧ ω̄^b) = -ω^b ∧ ω̄^a``."""
        n = self.n
        if g < n:
            return self.d.get(g, {})
        out = {}
        for (a, b), c in self.d.get(g - n, {}).items():
            if b < n:
                out[(a + n, b + n)] = c.conj()
            else:
                out[(b - n, a + n)] = -c.conj()
        return out


def _sort_sign(idx):
    """Sorted tuple and the sign of the sorting permutation, or ``None`` on repeats."""
    if len(set(idx)) < len(idx):
        return None, 0
    idx = list(idx)
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return tuple(idx), sign


def monomial_d(s: StructureEquations, mono) -> Dict[tuple, Scalar]:
    """Leibniz rule: ``Σ_t (-1)^t e_1 ∧ .. ∧ d(e_t) ∧ .. ∧ e_m``."""
    out = {}
    for t, g in enumerate(mono):
        for (a, b), c in s.generator_d(g).items():
            new, sign = _sort_sign(mono[:t] + (a, b) + mono[t + 1:])
            if new is None:
                continue
            val = out.get(new, Scalar(0)) + (c if (sign * (-1) ** t) > 0 else -c)
            if val:
                out[new] = val
            else:
                out.pop(new, None)
    return out


def bidegree_basis(n, p, q):
    return [h + tuple(n + j for j in a) for h in combinations(range(n), p) for a in combinations(range(n), q)]


def ce_complex(s: StructureEquations, check: bool = True) -> DoubleComplex:
    """The double complex ``Λ^{p,q}`` with ``∂, ∂̄`` the bidegree parts of ``d``."""
    n = s.n
    bases = {(p, q): bidegree_basis(n, p, q) for p in range(n + 1) for q in range(n + 1)}
    index = {b: {m: i for i, m in enumerate(ms)} for b, ms in bases.items()}
    h, v = {}, {}
    for (p, q), ms in bases.items():
        for j, mono in enumerate(ms):
            for new, c in monomial_d(s, mono).items():
                tp = sum(1 for x in new if x < n)
                if (tp, len(new) - tp) == (p + 1, q):
                    h.setdefault((p, q), {})[(index[(p + 1, q)][new], j)] = c
                elif (tp, len(new) - tp) == (p, q + 1):
                    v.setdefault((p, q), {})[(index[(p, q + 1)][new], j)] = c
                else:
                    raise ValidationError("d leaves the (2,0)+(1,1) bidegrees: the structure is not integrable")
    dims = {b: len(ms) for b, ms in bases.items()}
    C = DoubleComplex(
        dims,
        {b: ExactMatrix.from_sparse(dims[(b[0] + 1, b[1])], dims[b], data) for b, data in h.items()},
        {b: ExactMatrix.from_sparse(dims[(b[0], b[1] + 1)], dims[b], data) for b, data in v.items()},
    )
    if check:
        bad = validate(C)
        if bad:
            raise ValidationError(f"d^2 != 0 (Jacobi identity fails): {bad[0]}")
    return C


# ---------------------------------------------------------------- six-dimensional family

@dataclass(frozen=True)
class SixDimParams:
    """Parameters of the family ``dω¹ = 0``, ``dω² = ε ω^{11̄}``,
    ``dω³ = ρ ω^{12} + (1-ε)A ω^{11̄} + B ω^{12̄} + C ω^{21̄} + (1-ε)D ω^{22̄}``."""

    eps: int = 0
    rho: int = 0
    A: Scalar = Scalar(0)
    B: Scalar = Scalar(0)
    C: Scalar = Scalar(0)
    D: Scalar = Scalar(0)

    def __post_init__(self):
        if self.eps not in (0, 1) or self.rho not in (0, 1):
            raise DomainError("eps and rho must be 0 or 1")
        for name in "ABCD":
            object.__setattr__(self, name, Scalar.parse(getattr(self, name)))


def six_dim_structure(prm: SixDimParams) -> StructureEquations:
    n, e = 3, prm.eps
    w1, w2, b1, b2 = 0, 1, n + 0, n + 1
    return StructureEquations(n, {
        1: {(w1, b1): Scalar(e)},
        2: {(w1, w2): Scalar(prm.rho), (w1, b1): (1 - e) * prm.A, (w1, b2): prm.B,
            (w2, b1): prm.C, (w2, b2): (1 - e) * prm.D},
    })


def no_square_value(prm: SixDimParams):
    """``ρ² + |B|² + |C|² - 2 Re(A D̄)``; for ``ε = 1`` the terms of ``dω³``."""
    return prm.rho ** 2 + prm.B.norm() + prm.C.norm() - 2 * (prm.A * prm.D.conj()).re


def no_square_criterion(prm: SixDimParams) -> bool:
    """Whether the complex of the structure has no squares."""
    if prm.eps == 1:
        return prm.rho == 0 and not prm.B and not prm.C
    return no_square_value(prm) == 0


# ---------------------------------------------------------------- almost abelian

@dataclass(frozen=True)
class AlmostAbelianSpec:
    """Jordan block sizes ``ks`` of the shift acting on the abelian ideal; ``k0`` is the
    length of the extra chain starting with ``dβ⁰_1 = α ∧ ᾱ``."""

    ks: Tuple[int, ...]
    k0: int = 0

    def __post_init__(self):
        ks = tuple(int(k) for k in self.ks)
        if not ks and not self.k0 or any(k < 1 for k in ks) or self.k0 < 0:
            raise DomainError("block sizes must be positive")
        object.__setattr__(self, "ks", ks)

    @property
    def N(self) -> int:
        return sum(self.ks) + self.k0

    @property
    def n(self) -> int:
        return 1 + self.N


def almost_abelian(s: AlmostAbelianSpec) -> StructureEquations:
    """``dα = 0``, ``dβ^j_1 = 0`` and ``dβ^j_i = (α + ᾱ) ∧ β^j_{i-1}``."""
    n = s.n
    alpha, abar = 0, n
    d = {}
    nxt = 1
    blocks = ([(s.k0, True)] if s.k0 else []) + [(k, False) for k in s.ks]
    one = Scalar(1)
    for k, special in blocks:
        for i in range(k):
            g = nxt + i
            if i == 0:
                if special:
                    d[g] = {(alpha, abar): one}
                continue
            prev = g - 1
            # α∧β and ᾱ∧β = -β∧ᾱ
            d[g] = {(alpha, prev): one, (prev, abar): -one}
        nxt += k
    return StructureEquations(n, d)


def _weights(k):
    return list(range(k - 1, -k, -2))


def exterior_weights(ks, p) -> Counter:
    """Weight multiplicities of ``Λ^p(⊕ W_k)`` via ``∏ (1 + t x^w)``."""
    poly = {0: Counter({0: 1})}
    for k in ks:
        for w in _weights(k):
            new = {d: Counter(c) for d, c in poly.items()}
            for d, c in poly.items():
                tgt = new.setdefault(d + 1, Counter())
                for x, m in c.items():
                    tgt[x + w] += m
            poly = new
    return poly.get(p, Counter())


def sl2_c(s: AlmostAbelianSpec, p: int, q: int) -> Dict[int, int]:
    """Multiplicities ``c_k`` of ``W_k`` in ``Λ^p ⊗ Λ^q`` of the ``(1,0)``-part of the ideal."""
    N = sum(s.ks)
    if not (0 <= p <= N and 0 <= q <= N):
        raise DomainError(f"(p, q) = ({p}, {q}) outside [0, {N}]")
    a, b = exterior_weights(s.ks, p), exterior_weights(s.ks, q)
    w = Counter()
    for x, m in a.items():
        for y, l in b.items():
            w[x + y] += m * l
    out = {}
    for k in range(1, max(w, default=0) + 2):
        c = w.get(k - 1, 0) - w.get(k + 1, 0)
        if c:
            out[k] = c
    return out


def _c_table(s: AlmostAbelianSpec):
    N = sum(s.ks)
    return {(p, q): sl2_c(s, p, q) for p in range(N + 1) for q in range(N + 1)}


def dec_ab_predict(s: AlmostAbelianSpec):
    """Multiset of the CE complex from sl₂ multiplicities (requires ``k0 = 0``)."""
    if s.k0:
        raise DomainError("the prediction assumes k0 = 0")
    c = _c_table(s)
    get = lambda p, q: c.get((p, q), {})
    m = Counter()
    for p in range(s.n + 1):
        for q in range(s.n + 1):
            cc = get(p, q)
            sq = sum((k - 2) * v for k, v in cc.items() if k >= 3)
            up = sum(v for k, v in cc.items() if k >= 2)
            down = sum(v for k, v in get(p - 1, q - 1).items() if k >= 2)
            dots = (sum(cc.values()) + get(p - 1, q).get(1, 0) + get(p, q - 1).get(1, 0)
                    + sum(get(p - 1, q - 1).values()))
            if sq:
                m[Square(p, q)] += sq
            if up:
                m[OddZigzag(p + 1, q + 1, p + q + 1)] += up
            if down:
                m[OddZigzag(p - 1, q - 1, p + q - 1)] += down
            if dots:
                m[OddZigzag(p, q, p + q)] += dots
    return multiset(m)


def ab_formulas(s: AlmostAbelianSpec, p: int, q: int) -> Tuple[int, int, int]:
    """Closed forms ``(hodge, bott_chern, aeppli)`` at ``(p, q)``."""
    c = _c_table(s)
    get = lambda a, b: c.get((a, b), {})
    delta = lambda a, b: sum(get(a, b).values())
    weighted = lambda a, b: sum((1 if k == 1 else 2) * v for k, v in get(a, b).items())
    hodge = delta(p, q) + delta(p - 1, q) + delta(p, q - 1) + delta(p - 1, q - 1)
    bc = delta(p, q) + delta(p - 1, q) + delta(p, q - 1) + weighted(p - 1, q - 1)
    aeppli = weighted(p, q) + delta(p - 1, q) + delta(p, q - 1) + delta(p - 1, q - 1)
    return hodge, bc, aeppli


def sl2_conservation(s: AlmostAbelianSpec, p: int, q: int) -> bool:
    N = sum(s.ks)
    return sum(k * v for k, v in sl2_c(s, p, q).items()) == comb(N, p) * comb(N, q)
