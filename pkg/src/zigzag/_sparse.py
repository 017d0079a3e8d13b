"""Sparse exact elimination.

Vectors are plain dicts ``index -> nonzero field element``.  Any field type
with ``+ - * /`` and a falsy zero works; the engine uses ``gmpy2.mpq`` for
speed and :class:`~zigzag.linalg.Scalar` for genuinely complex data.
"""


def axpy(v, a, w):
    """In place ``v -= a * w``, dropping entries that cancel."""
    for j, x in w.items():
        y = v.get(j, 0) - a * x
        if y:
            v[j] = y
        else:
            v.pop(j, None)


def apply(mapping, v):
    """Apply a linear map stored as ``column index -> image vector``."""
    out = {}
    for j, x in v.items():
        col = mapping.get(j)
        if not col:
            continue
        for i, y in col.items():
            z = out.get(i, 0) + x * y
            if z:
                out[i] = z
            else:
                out.pop(i, None)
    return out


def restrict(v, keep):
    return {i: x for i, x in v.items() if i in keep}


class Echelon:
    """Incremental row echelon form; pivot of a stored row is its smallest key.

    With ``track=True`` every row carries a tag vector recording how it was
    built, which is what kernel computations read off.
    """

    __slots__ = ("rows", "track")

    def __init__(self, track=False):
        self.rows = {}
        self.track = track

    def __len__(self):
        return len(self.rows)

    def reduce(self, v, tag=None):
        v = dict(v)
        tag = dict(tag) if tag is not None else None
        rows = self.rows
        while v:
            c = min(v)
            hit = rows.get(c)
            if hit is None:
                break
            a = v[c]
            axpy(v, a, hit[0])
            if tag is not None:
                axpy(tag, a, hit[1])
        return v, tag

    def add(self, v, tag=None):
        """Insert ``v``; return ``(independent, reduced tag)``."""
        v, tag = self.reduce(v, tag)
        if not v:
            return False, tag
        c = min(v)
        inv = 1 / v[c]
        v = {j: x * inv for j, x in v.items()}
        if tag is not None:
            tag = {j: x * inv for j, x in tag.items()}
        self.rows[c] = (v, tag)
        return True, tag

    def contains(self, v):
        return not self.reduce(v)[0]


def span_rank(vectors):
    ech = Echelon()
    n = 0
    for v in vectors:
        if v and ech.add(v)[0]:
            n += 1
    return n


def kernel(columns, one=1):
    """Kernel of the map sending basis vector ``j`` to ``columns[j]``.

    ``columns`` is a sequence of ``(j, image)`` pairs; the returned vectors
    are combinations of the ``j``.
    """
    ech = Echelon(track=True)
    out = []
    for j, img in columns:
        indep, tag = ech.add(img, {j: one})
        if not indep:
            out.append(tag)
    return out
