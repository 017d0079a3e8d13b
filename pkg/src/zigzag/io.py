"""Text formats for complexes and multisets.

Complex file (JSON)::

    {"dims": [[p, q, n], ...],
     "del_h": [[p, q, [[row], ...]], ...],
     "del_v": [[p, q, [[row], ...]], ...]}

with scalars written as strings ``"a/b+c/d*i"`` (plain integers are also
accepted).  Multiset file: a list of
``{"shape": "odd"|"even_h"|"even_v"|"square", "p", "q", "k_or_l", "mult"}``.
"""

from __future__ import annotations

import json
from collections import Counter

from .complex import DoubleComplex
from .errors import ParseError, ValidationError
from .linalg import ExactMatrix, Scalar
from .shapes import make_shape, multiset, sort_key


def _loads(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{what}: line {e.lineno}, column {e.colno}: {e.msg}") from None


def complex_from_text(text: str) -> DoubleComplex:
    data = _loads(text, "complex file")
    if not isinstance(data, dict) or "dims" not in data:
        raise ParseError("complex file: expected an object with a 'dims' field")
    try:
        dims = {}
        for p, q, n in data["dims"]:
            if (p, q) in dims:
                raise ValidationError(f"bidegree ({p},{q}) listed twice")
            dims[(int(p), int(q))] = int(n)
        maps = {}
        for name, step in (("del_h", (1, 0)), ("del_v", (0, 1))):
            maps[name] = {}
            for p, q, rows in data.get(name, []):
                t = (p + step[0], q + step[1])
                nrows, ncols = dims.get(t, 0), dims.get((p, q), 0)
                entries = [Scalar.parse(x) for r in rows for x in r]
                if len(rows) != nrows or any(len(r) != ncols for r in rows):
                    raise ValidationError(f"{name} at ({p},{q}): expected {nrows}x{ncols} matrix")
                maps[name][(p, q)] = ExactMatrix(nrows, ncols, entries)
    except (TypeError, ValueError) as e:
        if isinstance(e, (ParseError, ValidationError)):
            raise
        raise ParseError(f"complex file: {e}") from None
    return DoubleComplex(dims, maps["del_h"], maps["del_v"])


def complex_to_text(C: DoubleComplex) -> str:
    def mats(table):
        return [[p, q, [[str(x) for x in m.row(i)] for i in range(m.rows)]] for (p, q), m in sorted(table.items())]
    data = {
        "dims": [[p, q, n] for (p, q), n in sorted(C.dims.items())],
        "del_h": mats(C.del_h),
        "del_v": mats(C.del_v),
    }
    return json.dumps(data, indent=1) + "\n"


def multiset_from_text(text: str) -> Counter:
    data = _loads(text, "multiset file")
    if not isinstance(data, list):
        raise ParseError("multiset file: expected a list of shape records")
    m = Counter()
    for i, rec in enumerate(data):
        try:
            s = make_shape(rec["shape"], int(rec["p"]), int(rec["q"]), int(rec.get("k_or_l") or 0))
            n = int(rec.get("mult", 1))
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, ValidationError):
                raise
            raise ParseError(f"multiset file: record {i}: {e!r}") from None
        if n < 0:
            raise ValidationError(f"multiset file: record {i}: negative multiplicity")
        m[s] += n
    return multiset(m)


def multiset_records(m) -> list:
    return [{"shape": s.kind, "p": s.p, "q": s.q, "k_or_l": s.k_or_l, "mult": m[s]}
            for s in sorted(m, key=sort_key) if m[s]]


def multiset_to_text(m) -> str:
    """Canonical form: records in shape order, one per line."""
    lines = [json.dumps(r) for r in multiset_records(m)]
    return "[\n" + ",\n".join(" " + l for l in lines) + ("\n]\n" if lines else "]\n")


def read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_complex(path: str) -> DoubleComplex:
    return complex_from_text(read(path))


def load_multiset(path: str) -> Counter:
    return multiset_from_text(read(path))
