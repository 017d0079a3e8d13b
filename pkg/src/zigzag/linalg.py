"""Exact linear algebra over the Gaussian rationals Q(i).

:class:`Scalar` is an exact element ``a + b i`` with rational parts and
:class:`ExactMatrix` a dense immutable matrix of them.  Ranks, kernels and
subquotient dimensions are computed by sparse Gaussian elimination over
``gmpy2.mpq``.  A matrix with non-real entries is realified
(``a + b i`` becomes the block ``[[a, -b], [b, a]]``), which doubles every
rank exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from gmpy2 import mpq

from . import _sparse
from .errors import DimensionError, ParseError, SubquotientError

_RAT = r"[+-]?\s*\d+(?:\s*/\s*\d+)?"
_SCALAR_RE = re.compile(
    rf"^\s*(?P<re>{_RAT})?\s*(?:(?P<sign>[+-])?\s*(?P<im>\d+(?:\s*/\s*\d+)?)?\s*\*?\s*i)?\s*$"
)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.replace(" ", ""))
    if type(x).__name__ == "mpq":
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot convert {x!r} to a rational")


class Scalar:
    """Exact Gaussian rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, Scalar):
            re, im = re.re, re.im + _frac(im)
        elif isinstance(re, complex):
            raise TypeError("floating point complex numbers are not exact")
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def parse(cls, text) -> "Scalar":
        """Parse literals such as ``"3"``, ``"-1/2+3/4*i"``, ``"i"``, ``"-2*i"``."""
        if isinstance(text, Scalar):
            return text
        if isinstance(text, (int, Fraction)):
            return cls(text)
        if not isinstance(text, str):
            raise ParseError(f"bad scalar literal {text!r}")
        m = _SCALAR_RE.match(text)
        if not m or not text.strip():
            raise ParseError(f"bad scalar literal {text!r}")
        re_part = _frac(m.group("re")) if m.group("re") else Fraction(0)
        im_part = Fraction(0)
        if text.rstrip().endswith("i"):
            im_part = _frac(m.group("im")) if m.group("im") else Fraction(1)
            if m.group("sign") == "-":
                im_part = -im_part
            elif m.group("sign") is None and m.group("re"):
                # "3i" style: the digits were swallowed as the real part
                re_part, im_part = Fraction(0), re_part
        return cls(re_part, im_part)

    @staticmethod
    def _lift(x):
        return x if isinstance(x, Scalar) else Scalar(x)

    def __add__(self, o):
        o = self._lift(o)
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._lift(o)
        return Scalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return self._lift(o) - self

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __mul__(self, o):
        o = self._lift(o)
        return Scalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._lift(o)
        n = o.norm()
        if not n:
            raise ZeroDivisionError("division by zero scalar")
        return self * Scalar(o.re / n, -o.im / n)

    def __rtruediv__(self, o):
        return self._lift(o) / self

    def conj(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def norm(self) -> Fraction:
        """``|z|^2``."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            return self.im == 0 and self.re == o
        if not isinstance(o, Scalar):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = "" if abs(self.im) == 1 else f"{abs(self.im)}*"
        if not self.re:
            return f"{'-' if self.im < 0 else ''}{im}i"
        return f"{self.re}{'-' if self.im < 0 else '+'}{im}i"

    def __repr__(self):
        return f"Scalar('{self}')"


ZERO = Scalar(0)
ONE = Scalar(1)


class ExactMatrix:
    """Dense immutable ``rows x cols`` matrix of :class:`Scalar`, row-major."""

    __slots__ = ("rows", "cols", "entries", "__dict__")

    def __init__(self, rows: int, cols: int, entries: Sequence = None):
        if rows < 0 or cols < 0:
            raise DimensionError("negative matrix size")
        if entries is None:
            entries = (ZERO,) * (rows * cols)
        entries = tuple(e if isinstance(e, Scalar) else Scalar.parse(e) for e in entries)
        if len(entries) != rows * cols:
            raise DimensionError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    # constructors
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "ExactMatrix":
        if any(len(c) != rows for c in columns):
            raise DimensionError("columns of unequal length")
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], len(columns))

    @classmethod
    def from_sparse(cls, rows: int, cols: int, data: dict) -> "ExactMatrix":
        """Build from ``{(i, j): value}``."""
        entries = [ZERO] * (rows * cols)
        for (i, j), x in data.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionError(f"entry ({i}, {j}) outside {rows}x{cols}")
            entries[i * cols + j] = Scalar.parse(x)
        return cls(rows, cols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.from_sparse(n, n, {(i, i): ONE for i in range(n)})

    def __setattr__(self, name, value):
        if name in ("rows", "cols", "entries"):
            raise AttributeError("ExactMatrix is immutable")
        object.__setattr__(self, name, value)

    # access
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @cached_property
    def nonzero(self) -> dict:
        """``{(i, j): entry}`` for nonzero entries."""
        c = self.cols
        return {divmod(n, c): x for n, x in enumerate(self.entries) if x}

    def is_zero(self) -> bool:
        return not self.nonzero

    def is_real(self) -> bool:
        return all(not x.im for x in self.nonzero.values())

    # arithmetic
    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_sparse(self.cols, self.rows, {(j, i): x for (i, j), x in self.nonzero.items()})

    @property
    def T(self):
        return self.transpose()

    def __neg__(self):
        return ExactMatrix(self.rows, self.cols, [-x for x in self.entries])

    def __add__(self, o: "ExactMatrix"):
        if self.shape != o.shape:
            raise DimensionError(f"cannot add {self.shape} and {o.shape}")
        return ExactMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, o.entries)])

    def __sub__(self, o):
        return self + (-o)

    def scale(self, s) -> "ExactMatrix":
        s = Scalar.parse(s)
        return ExactMatrix(self.rows, self.cols, [s * x for x in self.entries])

    def __matmul__(self, o: "ExactMatrix") -> "ExactMatrix":
        if self.cols != o.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {o.shape}")
        by_row = {}
        for (k, j), y in o.nonzero.items():
            by_row.setdefault(k, []).append((j, y))
        acc = {}
        for (i, k), x in self.nonzero.items():
            for j, y in by_row.get(k, ()):
                acc[i, j] = acc.get((i, j), ZERO) + x * y
        return ExactMatrix.from_sparse(self.rows, o.cols, {ij: v for ij, v in acc.items() if v})

    def __eq__(self, o):
        if not isinstance(o, ExactMatrix):
            return NotImplemented
        return self.shape == o.shape and self.entries == o.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"

    @staticmethod
    def hstack(*ms: "ExactMatrix") -> "ExactMatrix":
        if not ms:
            raise DimensionError("nothing to stack")
        r = ms[0].rows
        if any(m.rows != r for m in ms):
            raise DimensionError("hstack needs equal row counts")
        rows = [[x for m in ms for x in m.row(i)] for i in range(r)]
        return ExactMatrix.from_rows(rows, sum(m.cols for m in ms))

    @staticmethod
    def vstack(*ms: "ExactMatrix") -> "ExactMatrix":
        if not ms:
            raise DimensionError("nothing to stack")
        c = ms[0].cols
        if any(m.cols != c for m in ms):
            raise DimensionError("vstack needs equal column counts")
        return ExactMatrix(sum(m.rows for m in ms), c, [x for m in ms for x in m.entries])

    # sparse views used by the elimination engine
    def real_columns(self):
        """Columns as sparse ``mpq`` vectors, realified when needed.

        Returns ``(columns, factor)``; ``factor`` is 2 after realification.
        """
        real = self.is_real()
        cols = [dict() for _ in range(self.cols * (1 if real else 2))]
        for (i, j), x in self.nonzero.items():
            re_, im_ = to_mpq(x.re), to_mpq(x.im)
            if real:
                cols[j][i] = re_
                continue
            # column 2j is the image of e_j, column 2j+1 the image of i*e_j
            if re_:
                cols[2 * j][2 * i] = re_
                cols[2 * j + 1][2 * i + 1] = re_
            if im_:
                cols[2 * j][2 * i + 1] = im_
                cols[2 * j + 1][2 * i] = -im_
        return cols, 1 if real else 2


def to_mpq(x: Fraction):
    return mpq(x.numerator, x.denominator)


def from_mpq(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _realify_together(*ms: ExactMatrix):
    """Sparse columns for several matrices with a common realification factor."""
    real = all(m.is_real() for m in ms)
    out = []
    for m in ms:
        if real or not m.is_real():
            cols, _ = m.real_columns()
        else:
            # force realification of a real matrix so factors agree
            cols = [dict() for _ in range(2 * m.cols)]
            for (i, j), x in m.nonzero.items():
                v = to_mpq(x.re)
                cols[2 * j][2 * i] = v
                cols[2 * j + 1][2 * i + 1] = v
        out.append(cols)
    return out, 1 if real else 2


def rank(M: ExactMatrix) -> int:
    """Exact rank over Q(i)."""
    cols, factor = M.real_columns()
    return _sparse.span_rank(cols) // factor


def kernel_basis(M: ExactMatrix) -> ExactMatrix:
    """Matrix whose columns form a basis of ``ker M`` (``cols - rank`` columns)."""
    n = M.cols
    if M.is_real():
        cols, _ = M.real_columns()
        vecs = _sparse.kernel(list(enumerate(cols)), one=mpq(1))
        data = {(i, j): Scalar(from_mpq(x)) for j, v in enumerate(vecs) for i, x in v.items()}
    else:
        cols = [dict() for _ in range(n)]
        for (i, j), x in M.nonzero.items():
            cols[j][i] = x
        vecs = _sparse.kernel(list(enumerate(cols)), one=ONE)
        data = {(i, j): x for j, v in enumerate(vecs) for i, x in v.items()}
    return ExactMatrix.from_sparse(n, len(vecs), data)


def column_rank(*ms: ExactMatrix) -> int:
    """Rank of the column span of several matrices with equal row counts."""
    if len({m.rows for m in ms}) > 1:
        raise DimensionError("column spans live in different spaces")
    cols, factor = _realify_together(*ms)
    return _sparse.span_rank(v for c in cols for v in c) // factor


def subquotient_dim(U: ExactMatrix, W: ExactMatrix) -> int:
    """``dim (span U + span W) / span W``; columns of both live in one space."""
    if U.rows != W.rows:
        raise DimensionError(f"subspaces of dimension {U.rows} and {W.rows} ambient spaces")
    return column_rank(U, W) - column_rank(W)


def induced_map_rank(M: ExactMatrix, dom_U: ExactMatrix, dom_W: ExactMatrix, cod_W: ExactMatrix) -> int:
    """Rank of the map ``(U + W)/W -> V/W'`` induced by ``M``.

    ``dom_U``, ``dom_W`` span subspaces of the source with ``M(W)`` required to
    lie in the span of ``cod_W``; the result is
    ``dim (M U + W') / W'``.
    """
    if dom_U.rows != M.cols or dom_W.rows != M.cols or cod_W.rows != M.rows:
        raise DimensionError("subspaces do not match the map")
    base = column_rank(cod_W)
    if column_rank(cod_W, M @ dom_W) != base:
        raise SubquotientError("the map does not send the domain denominator into the target denominator")
    return column_rank(cod_W, M @ dom_U) - base


def as_matrix(columns: Iterable[Sequence], rows: int) -> ExactMatrix:
    return ExactMatrix.from_columns([list(c) for c in columns], rows)
