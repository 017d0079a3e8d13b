"""Cohomological invariants of double complexes.

Everything reduces to ranks and kernels of sparse rational matrices on a
real form of the complex (see :class:`RealForm`); dimensions of the real form
are divided by its realification factor at the end.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from gmpy2 import mpq

from . import _sparse
from .complex import DoubleComplex, transpose
from .errors import DomainError, IntegrityError

VAROUCHAS_GROUPS = "ABCDEF"
FILTRATIONS = ("std", "conj")


class RealForm:
    """Global sparse coordinates for a complex.

    Components are ordered by total degree and then by ``p``, so every
    ``Tot^k`` is a contiguous index range and ``F_p Tot^k`` is a suffix of it.
    """

    def __init__(self, C: DoubleComplex):
        self.C = C
        self.factor = 1 if C.is_real() else 2
        f = self.factor
        self.comps = sorted(C.dims, key=lambda b: (b[0] + b[1], b[0]))
        self.index = {}
        self.owner = []
        off = 0
        for b in self.comps:
            n = f * C.dims[b]
            self.index[b] = range(off, off + n)
            self.owner += [b] * n
            off += n
        self.dh = self._globalize(C.del_h, (1, 0))
        self.dv = self._globalize(C.del_v, (0, 1))
        self.d = {}
        for j in range(off):
            v = dict(self.dh.get(j, ()))
            v.update(self.dv.get(j, ()))
            if v:
                self.d[j] = v
        self.cache = {}

    def _globalize(self, maps, step):
        out = {}
        for b, m in maps.items():
            t = (b[0] + step[0], b[1] + step[1])
            cols, _ = m.real_columns() if self.factor == 1 else _force_realify(m)
            src, tgt = self.index[b], self.index[t]
            for j, col in enumerate(cols):
                if col:
                    out[src[j]] = {tgt[i]: x for i, x in col.items()}
        return out

    # coordinates
    def coords(self, bidegrees):
        out = []
        for b in bidegrees:
            out.extend(self.index.get(b, ()))
        return out

    def dim(self, b) -> int:
        return len(self.index.get(b, ()))

    def tot(self, k):
        return [b for b in self.comps if b[0] + b[1] == k]

    def hdh(self, j):
        """``∂̄∂`` of basis vector ``j``."""
        return _sparse.apply(self.dv, self.dh.get(j, {}))

    # cached ranks
    def rank(self, key, vectors_fn) -> int:
        if key not in self.cache:
            self.cache[key] = _sparse.span_rank(vectors_fn())
        return self.cache[key]

    def images(self, mapping, b):
        return (mapping.get(j, {}) for j in self.index.get(b, ()))

    def r_h(self, b):
        return self.rank(("h", b), lambda: self.images(self.dh, b))

    def r_v(self, b):
        return self.rank(("v", b), lambda: self.images(self.dv, b))

    def r_d(self, b):
        return self.rank(("d", b), lambda: self.images(self.d, b))

    def r_hv(self, b):
        return self.rank(("hv", b), lambda: (self.hdh(j) for j in self.index.get(b, ())))

    def r_im(self, b):
        p, q = b
        return self.rank(("im", b), lambda: [*self.images(self.dh, (p - 1, q)), *self.images(self.dv, (p, q - 1))])


def _force_realify(m):
    cols, f = m.real_columns()
    if f == 2:
        return cols, 2
    out = [dict() for _ in range(2 * m.cols)]
    for j, col in enumerate(cols):
        for i, x in col.items():
            out[2 * j][2 * i] = x
            out[2 * j + 1][2 * i + 1] = x
    return out, 2


def real_form(C: DoubleComplex) -> RealForm:
    rf = C._cache.get("real")
    if rf is None:
        rf = C._cache["real"] = RealForm(C)
    return rf


def _div(rf: RealForm, x: int) -> int:
    if x % rf.factor:
        raise IntegrityError("realified dimension is not divisible by the realification factor")
    return x // rf.factor


# ---------------------------------------------------------------- classical

def betti(C: DoubleComplex, k: int) -> int:
    """Dimension of total cohomology in degree ``k``."""
    rf = real_form(C)

    def rank_d(j):
        src = rf.tot(j)
        return rf.rank(("tot", j), lambda: [rf.d.get(i, {}) for i in rf.coords(src)])

    n = len(rf.coords(rf.tot(k)))
    return _div(rf, n - rank_d(k) - rank_d(k - 1))


def dolbeault(C: DoubleComplex, p: int, q: int) -> int:
    """``ker ∂̄ / im ∂̄`` at ``(p, q)``."""
    rf = real_form(C)
    b = (p, q)
    return _div(rf, rf.dim(b) - rf.r_v(b) - rf.r_v((p, q - 1)))


def conj_dolbeault(C: DoubleComplex, p: int, q: int) -> int:
    """``ker ∂ / im ∂`` at ``(p, q)``."""
    rf = real_form(C)
    b = (p, q)
    return _div(rf, rf.dim(b) - rf.r_h(b) - rf.r_h((p - 1, q)))


def bott_chern(C: DoubleComplex, p: int, q: int) -> int:
    """``(ker ∂ ∩ ker ∂̄) / im ∂∂̄``."""
    rf = real_form(C)
    b = (p, q)
    return _div(rf, rf.dim(b) - rf.r_d(b) - rf.r_hv((p - 1, q - 1)))


def aeppli(C: DoubleComplex, p: int, q: int) -> int:
    """``ker ∂∂̄ / (im ∂ + im ∂̄)``."""
    rf = real_form(C)
    b = (p, q)
    return _div(rf, rf.dim(b) - rf.r_hv(b) - rf.r_im(b))


def varouchas(C: DoubleComplex, group: str, p: int, q: int) -> int:
    """Dimension of one of the six subquotients ``A, ..., F`` at ``(p, q)``.

    A = (im ∂ ∩ im ∂̄)/im ∂∂̄,  B = (im ∂ ∩ ker ∂̄)/im ∂∂̄,
    C = ker ∂∂̄/(ker ∂̄ + im ∂), D = (ker ∂ ∩ im ∂̄)/im ∂∂̄,
    E = ker ∂∂̄/(ker ∂ + im ∂̄),  F = ker ∂∂̄/(ker ∂̄ + ker ∂).

    Intersections and sums are expanded with ``dim(U ∩ W) = dim U + dim W -
    dim(U + W)`` and ``dim(U ∩ ker f) = dim U - rank f|_U``.
    """
    rf = real_form(C)
    b = (p, q)
    left, down, diag = (p - 1, q), (p, q - 1), (p - 1, q - 1)
    rh, rv, rd, rhv = rf.r_h(b), rf.r_v(b), rf.r_d(b), rf.r_hv(b)
    im_dd = rf.r_hv(diag)
    vals = {
        "A": rf.r_h(left) + rf.r_v(down) - rf.r_im(b) - im_dd,
        "B": rf.r_h(left) - rf.r_hv(left) - im_dd,
        "C": rv - rhv - rf.r_hv(left),
        "D": rf.r_v(down) - rf.r_hv(down) - im_dd,
        "E": rh - rhv - rf.r_hv(down),
        "F": rv + rh - rd - rhv,
    }
    try:
        return _div(rf, vals[group])
    except KeyError:
        raise DomainError(f"Varouchas group must be one of {VAROUCHAS_GROUPS}, got {group!r}") from None


# ---------------------------------------------------------------- Frölicher

class _SpectralSequence:
    """Spectral sequence of the column filtration ``F_l = ⊕_{p >= l} A^{p,*}``."""

    def __init__(self, C: DoubleComplex):
        self.rf = real_form(C)
        self.C = C
        hull = C.hull()
        self.pmin, self.pmax = (hull[0], hull[1]) if hull else (0, -1)
        self.z = {}
        self.den = {}

    def filtered(self, p, k):
        return self.rf.coords(b for b in self.rf.tot(k) if b[0] >= p)

    def Z(self, p, k, r):
        """Basis of ``{x in F_p Tot^k : dx in F_{p+r}}``."""
        rf = self.rf
        top = self.pmax + 1
        t = p + r
        p = min(max(p, self.pmin), top)
        t = min(max(t, p), top)
        key = (p, k, t)
        if key not in self.z:
            below = set(rf.coords(b for b in rf.tot(k + 1) if b[0] < t))
            cols = [(j, _sparse.restrict(rf.d.get(j, {}), below)) for j in self.filtered(p, k)]
            self.z[key] = _sparse.kernel(cols, one=mpq(1))
        return self.z[key]

    def denominator(self, p, k, r):
        key = (p, k, r)
        if key not in self.den:
            d = self.rf.d
            vecs = list(self.Z(p + 1, k, r - 1))
            vecs += [_sparse.apply(d, x) for x in self.Z(p - r + 1, k - 1, r - 1)]
            self.den[key] = [v for v in vecs if v]
        return self.den[key]

    def _den_rank(self, p, k, r):
        key = ("den", p, k, r)
        if key not in self.z:
            self.z[key] = _sparse.span_rank(self.denominator(p, k, r))
        return self.z[key]

    def dim(self, r, p, q):
        """Realified ``dim E_r^{p,q}``."""
        if not self.C.dim(p, q):
            return 0
        k = p + q
        den = self.denominator(p, k, r)
        return _sparse.span_rank([*den, *self.Z(p, k, r)]) - self._den_rank(p, k, r)

    def rank(self, r, p, q):
        """Realified rank of ``d_r: E_r^{p,q} -> E_r^{p+r,q-r+1}``."""
        if not (self.C.dim(p, q) and self.C.dim(p + r, q - r + 1)):
            return 0
        k = p + q
        tden = self.denominator(p + r, k + 1, r)
        images = (_sparse.apply(self.rf.d, x) for x in self.Z(p, k, r))
        return _sparse.span_rank([*tden, *images]) - self._den_rank(p + r, k + 1, r)

    def page(self, r, p, q):
        """``(dim E_r^{p,q}, rank d_r: E_r^{p,q} -> E_r^{p+r,q-r+1})``, realified."""
        if r < 1:
            raise DomainError("pages start at r = 1")
        dim = self.dim(r, p, q)
        return dim, (self.rank(r, p, q) if dim else 0)


def _spectral(C: DoubleComplex) -> _SpectralSequence:
    ss = C._cache.get("ss")
    if ss is None:
        ss = C._cache["ss"] = _SpectralSequence(C)
    return ss


def frolicher(C: DoubleComplex, filtration: str, r: int, p: int, q: int) -> Tuple[int, int]:
    """``(dim E_r^{p,q}, rank d_r)`` at page ``r >= 1``.

    ``filtration="conj"`` is the spectral sequence of the row filtration,
    computed on the transpose but indexed by the original bidegree.
    """
    if filtration == "std":
        ss, (a, b) = _spectral(C), (p, q)
    elif filtration == "conj":
        T = C._cache.get("transpose")
        if T is None:
            T = C._cache["transpose"] = transpose(C)
        ss, (a, b) = _spectral(T), (q, p)
    else:
        raise DomainError(f"filtration must be 'std' or 'conj', got {filtration!r}")
    dim, rk = ss.page(r, a, b)
    return _div(ss.rf, dim), _div(ss.rf, rk)


def frolicher_table(C: DoubleComplex, filtration: str) -> Dict[tuple, tuple]:
    """Nonzero ``{(r, p, q): (dim, rank)}`` for pages up to stabilization.

    Pages run from 1 to one past the last nonzero differential, so the last
    stored page is ``E_∞``.
    """
    hull = C.hull()
    if hull is None:
        return {}
    if filtration == "std":
        ss, flip = _spectral(C), lambda b: b
        width = hull[1] - hull[0]
    elif filtration == "conj":
        T = C._cache.get("transpose")
        if T is None:
            T = C._cache["transpose"] = transpose(C)
        ss, flip = _spectral(T), lambda b: (b[1], b[0])
        width = hull[3] - hull[2]
    else:
        raise DomainError(f"filtration must be 'std' or 'conj', got {filtration!r}")
    # dim E_{r+1} = dim E_r - rank of d_r leaving minus rank of d_r arriving
    dims = {b: ss.dim(1, *b) for b in ss.C.support}
    pages = {}
    last = 0
    for r in range(1, width + 2):
        ranks = {}
        for (p, q), n in dims.items():
            if n and dims.get((p + r, q - r + 1)):
                rk = ss.rank(r, p, q)
                if rk:
                    ranks[(p, q)] = rk
        for b, n in dims.items():
            if n:
                pages[(r, *flip(b))] = (_div(ss.rf, n), _div(ss.rf, ranks.get(b, 0)))
        if ranks:
            last = r
        new = dict(dims)
        for (p, q), rk in ranks.items():
            new[(p, q)] -= rk
            new[(p + r, q - r + 1)] -= rk
        dims = new
    return {key: val for key, val in pages.items() if key[0] <= last + 1}


# ---------------------------------------------------------------- Bigolin

def bigolin_region(C: DoubleComplex, k: int, p: int, q: int):
    """Bidegrees making up ``B^k`` of the Bigolin complex at ``(p, q)``."""
    if k <= p + q:
        return [b for b in C.support if b[0] + b[1] == k and b[0] <= p and b[1] <= q]
    return [b for b in C.support if b[0] + b[1] == k + 1 and b[0] > p and b[1] > q]


def _bigolin_rank(C: DoubleComplex, k: int, p: int, q: int) -> int:
    """Realified rank of ``B^k -> B^{k+1}``."""
    rf = real_form(C)
    dom = tuple(bigolin_region(C, k, p, q))
    tgt = tuple(bigolin_region(C, k + 1, p, q))
    if not dom or not tgt:
        return 0
    if k == p + q:
        return rf.r_hv((p, q))
    keep = set(rf.coords(tgt))
    return rf.rank(("bigolin", dom, tgt),
                   lambda: [_sparse.restrict(rf.d.get(j, {}), keep) for j in rf.coords(dom)])


def bigolin(C: DoubleComplex, k: int, p: int, q: int) -> int:
    """Cohomology of the Bigolin complex ``h^k_{p,q}``.

    For ``k <= p+q`` the terms are ``⊕_{r+s=k, r<=p, s<=q} A^{r,s}`` with the
    projected total differential, the step ``k = p+q`` is ``∂∂̄`` and for
    ``k > p+q`` the terms are ``⊕_{r+s=k+1, r>p, s>q} A^{r,s}`` with ``d``.
    """
    rf = real_form(C)
    n = len(rf.coords(bigolin_region(C, k, p, q)))
    return _div(rf, n - _bigolin_rank(C, k, p, q) - _bigolin_rank(C, k - 1, p, q))


def bigolin_reduced(C: DoubleComplex, k: int, p: int, q: int) -> int:
    """Second difference ``h̃^k_{p,q}`` of Bigolin numbers."""
    return (bigolin(C, k, p - 1, q - 1) - bigolin(C, k, p - 1, q)
            - bigolin(C, k, p, q - 1) + bigolin(C, k, p, q))


# ---------------------------------------------------------------- bundles

@dataclass(frozen=True)
class Window:
    """Index box for Bigolin numbers: bidegrees and degrees ``k`` included."""

    pmin: int
    pmax: int
    qmin: int
    qmax: int
    kmin: int
    kmax: int

    @classmethod
    def around(cls, support) -> Optional["Window"]:
        """Support hull grown by one in every direction."""
        support = list(support)
        if not support:
            return None
        ps = [b[0] for b in support]
        qs = [b[1] for b in support]
        ks = [b[0] + b[1] for b in support]
        return cls(min(ps) - 1, max(ps) + 1, min(qs) - 1, max(qs) + 1, min(ks) - 1, max(ks) + 1)

    def union(self, other: Optional["Window"]) -> "Window":
        if other is None:
            return self
        return Window(min(self.pmin, other.pmin), max(self.pmax, other.pmax),
                      min(self.qmin, other.qmin), max(self.qmax, other.qmax),
                      min(self.kmin, other.kmin), max(self.kmax, other.kmax))

    def indices(self):
        for k in range(self.kmin, self.kmax + 1):
            for p in range(self.pmin, self.pmax + 1):
                for q in range(self.qmin, self.qmax + 1):
                    yield k, p, q


FIELDS = ("betti", "dolbeault", "conj_dolbeault", "bott_chern", "aeppli", "varouchas", "frolicher", "bigolin")


@dataclass
class InvariantBundle:
    """All invariants of a complex, as sparse maps holding nonzero values only.

    ``varouchas`` is keyed by ``(group, p, q)``, ``frolicher`` by
    ``(filtration, r, p, q)`` with values ``(dim E_r, rank d_r)`` and
    ``bigolin`` by ``(k, p, q)``.
    """

    betti: Dict[int, int] = field(default_factory=dict)
    dolbeault: Dict[tuple, int] = field(default_factory=dict)
    conj_dolbeault: Dict[tuple, int] = field(default_factory=dict)
    bott_chern: Dict[tuple, int] = field(default_factory=dict)
    aeppli: Dict[tuple, int] = field(default_factory=dict)
    varouchas: Dict[tuple, int] = field(default_factory=dict)
    frolicher: Dict[tuple, tuple] = field(default_factory=dict)
    bigolin: Dict[tuple, int] = field(default_factory=dict)
    window: Optional[Window] = field(default=None, compare=False)

    def restrict(self, *names) -> dict:
        return {n: getattr(self, n) for n in names}

    def differences(self, other: "InvariantBundle", names=FIELDS) -> list:
        """Names of fields on which two bundles disagree."""
        return [n for n in names if getattr(self, n) != getattr(other, n)]

    def to_dict(self) -> dict:
        def flat(d):
            out = []
            for key in sorted(d):
                k = list(key) if isinstance(key, tuple) else [key]
                v = d[key]
                out.append(k + (list(v) if isinstance(v, tuple) else [v]))
            return out
        return {n: flat(getattr(self, n)) for n in FIELDS}

    @classmethod
    def from_dict(cls, data: dict) -> "InvariantBundle":
        def unflat(rows, nkey, pair=False):
            out = {}
            for row in rows:
                key = row[0] if nkey == 1 else tuple(row[:nkey])
                out[key] = tuple(row[nkey:]) if pair else row[nkey]
            return out
        return cls(
            betti=unflat(data.get("betti", []), 1),
            dolbeault=unflat(data.get("dolbeault", []), 2),
            conj_dolbeault=unflat(data.get("conj_dolbeault", []), 2),
            bott_chern=unflat(data.get("bott_chern", []), 2),
            aeppli=unflat(data.get("aeppli", []), 2),
            varouchas=unflat(data.get("varouchas", []), 3),
            frolicher=unflat(data.get("frolicher", []), 4, pair=True),
            bigolin=unflat(data.get("bigolin", []), 3),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def _nonzero(d):
    return {k: v for k, v in d.items() if v}


def invariant_bundle(C: DoubleComplex, window: Optional[Window] = None, bigolin_numbers=True) -> InvariantBundle:
    """Compute every invariant of ``C``; Bigolin numbers over ``window``."""
    sup = C.support
    if window is None:
        window = Window.around(sup)
    degrees = sorted({p + q for p, q in sup})
    fro = {}
    for filt in FILTRATIONS:
        fro.update({(filt, *key): val for key, val in frolicher_table(C, filt).items()})
    return InvariantBundle(
        betti=_nonzero({k: betti(C, k) for k in degrees}),
        dolbeault=_nonzero({b: dolbeault(C, *b) for b in sup}),
        conj_dolbeault=_nonzero({b: conj_dolbeault(C, *b) for b in sup}),
        bott_chern=_nonzero({b: bott_chern(C, *b) for b in sup}),
        aeppli=_nonzero({b: aeppli(C, *b) for b in sup}),
        varouchas=_nonzero({(g, *b): varouchas(C, g, *b) for g in VAROUCHAS_GROUPS for b in sup}),
        frolicher=fro,
        bigolin=_nonzero({i: bigolin(C, *i) for i in window.indices()}) if (window and bigolin_numbers) else {},
        window=window,
    )
