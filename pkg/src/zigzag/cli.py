"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 invalid input or failed integrity
check.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from collections import Counter

from . import io
from .cohomology import FIELDS, InvariantBundle, invariant_bundle
from .complex import DoubleComplex, synthesize, validate
from .decomposition import decompose, is_isomorphic, is_locally_similar, is_quasi_isomorphic
from .errors import DomainError, IntegrityError, NotRealizableError, ParseError, ValidationError
from .formal import (
    FillingMap, chi_difference, enumerate_rank, fixtures, kernel_element, random_filling_map, rank_formula,
)
from .lie import AlmostAbelianSpec, SixDimParams, almost_abelian, ce_complex, six_dim_structure
from .parallel import pmap
from .shapes import components, make_shape, sort_key


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------- rendering

def render_diamond(bundle: InvariantBundle, field: str = "dolbeault") -> str:
    """Hodge-diamond layout of one bidegree map, top degree first."""
    data = getattr(bundle, field)
    if not data:
        return ""
    ps = [p for p, _ in data]
    qs = [q for _, q in data]
    p0, p1 = min(0, min(ps)), max(ps)
    q0, q1 = min(0, min(qs)), max(qs)
    p1 = q1 = max(p1, q1)
    w = max(len(str(v)) for v in data.values()) + 1
    xmin = q0 - p1
    lines = []
    for k in range(p1 + q1, p0 + q0 - 1, -1):
        cells = {}
        for p in range(p0, p1 + 1):
            q = k - p
            if q0 <= q <= q1:
                cells[q - p - xmin] = str(data.get((p, q), 0))
        if not cells:
            continue
        width = (max(cells) + 1) * w
        row = [" "] * width
        for x, s in cells.items():
            start = x * w
            row[start:start + len(s)] = list(s)
        lines.append("".join(row).rstrip())
    return "\n".join(lines)


def render_tables(bundle: InvariantBundle) -> str:
    out = ["Hodge diamond (Dolbeault):", render_diamond(bundle) or "(empty)", ""]
    for name in FIELDS:
        rows = bundle.to_dict()[name]
        out.append(f"{name}:")
        if not rows:
            out.append("  (none)")
        for r in rows:
            *key, val = r if name != "frolicher" else (r[:4] + [tuple(r[4:])])
            out.append("  " + " ".join(f"{x:>4}" for x in map(str, key)) + "  | " + (
                f"dim {val[0]} rank {val[1]}" if isinstance(val, tuple) else str(val)))
    return "\n".join(out)


def render_multiset(m) -> str:
    if not m:
        return "(empty)"
    lines = []
    for s in sorted(m, key=sort_key):
        lines.append(f"{m[s]:>4} x {s.kind:<7} {str(s):<18} length {s.length}  at {components(s)}")
    return "\n".join(lines)


# ---------------------------------------------------------------- commands

def _load_any(path: str) -> DoubleComplex:
    """Complex file, or a multiset file which is synthesized."""
    text = io.read(path)
    if text.lstrip().startswith("["):
        return synthesize(io.multiset_from_text(text))
    C = io.complex_from_text(text)
    bad = validate(C)
    if bad:
        raise ValidationError(f"{path} is not a double complex:\n" + "\n".join(f"  {v}" for v in bad))
    return C


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_validate(a):
    C = io.complex_from_text(io.read(a.file))
    bad = validate(C)
    if a.format == "structured":
        print(json.dumps({"valid": not bad, "violations": [[v.kind, *v.bidegree] for v in bad]}))
    else:
        print("valid" if not bad else "\n".join(str(v) for v in bad))
    return 2 if bad else 0


def cmd_invariants(a):
    B = invariant_bundle(_load_any(a.file))
    print(B.to_json() if a.format == "structured" else render_tables(B))
    return 0


def _report_decomposition(m, fmt, out=None):
    _emit(io.multiset_to_text(m) if fmt == "structured" else render_multiset(m), out)


def cmd_decompose(a):
    _report_decomposition(decompose(_load_any(a.file)), a.format, a.output)
    return 0


def cmd_compare(a):
    C1, C2 = _load_any(a.a), _load_any(a.b)
    yn = lambda b: "yes" if b else "no"
    if a.mode == "local":
        res = {"locally similar": is_locally_similar(C1, C2), "quasi-isomorphic": is_quasi_isomorphic(C1, C2)}
    elif a.mode == "quasi":
        res = {"quasi-isomorphic": is_quasi_isomorphic(C1, C2)}
    else:
        res = {"isomorphic": is_isomorphic(C1, C2)}
    if a.format == "structured":
        print(json.dumps(res))
    else:
        print("; ".join(f"{k}: {yn(v)}" for k, v in res.items()))
    return 0


def random_multiset(rng: random.Random, size=4, max_shapes=40) -> Counter:
    """Random multiset of shapes fitting in ``[0, size]²``."""
    m = Counter()
    for _ in range(rng.randint(1, max_shapes)):
        while True:
            kind = rng.choice(["odd", "even_h", "even_v", "square"])
            p, q = rng.randint(0, size), rng.randint(0, size)
            arg = rng.randint(0, 2 * size) if kind == "odd" else rng.randint(1, size)
            s = make_shape(kind, p, q, arg)
            if all(0 <= x <= size and 0 <= y <= size for x, y in components(s)):
                break
        m[s] += 1
    return m


def cmd_synth(a):
    if a.random:
        m = random_multiset(random.Random(a.seed), a.size, a.random)
    elif a.file:
        m = io.load_multiset(a.file)
    else:
        raise UsageError("synth needs a multiset file or --random N")
    _emit(io.complex_to_text(synthesize(m)), a.output)
    return 0


def _lie_output(C, a):
    if a.output:
        _emit(io.complex_to_text(C), a.output)
    if not a.output or a.decompose:
        _report_decomposition(decompose(C), a.format)
    return 0


def cmd_ce6(a):
    prm = SixDimParams(a.eps, a.rho, a.A, a.B, a.C, a.D)
    return _lie_output(ce_complex(six_dim_structure(prm)), a)


def cmd_almost_abelian(a):
    try:
        ks = tuple(int(x) for x in a.ks.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"--ks expects comma separated integers, got {a.ks!r}") from None
    return _lie_output(ce_complex(almost_abelian(AlmostAbelianSpec(ks, a.k0))), a)


def _rank_pair(n):
    return n, rank_formula(n), enumerate_rank(n)


def cmd_formal(a):
    if a.what == "rank":
        print(rank_formula(a.n))
        return 0
    if a.what == "verify-rank":
        rows = pmap(_rank_pair, range(2, a.max + 1))
        ok = all(f == e for _, f, e in rows)
        for n, f, e in rows:
            print(f"n={n} formula={f} enumeration={e} {'ok' if f == e else 'MISMATCH'}")
        return 0 if ok else 2
    # kernel
    if a.values:
        vals = {}
        for item in a.values.split(";"):
            if not item.strip():
                continue
            try:
                pq, v = item.split(":")
                p, q = (int(x) for x in pq.split(","))
                vals[(p, q)] = vals.get((p, q), 0) + int(v)
            except ValueError:
                raise UsageError(f"bad --values entry {item!r}; expected 'p,q:v'") from None
        f = FillingMap(a.k, a.sign, vals)
    else:
        f = random_filling_map(random.Random(a.seed), a.k, a.sign)
    pos, neg = kernel_element(f)
    _, _, equal = chi_difference(pos, neg)
    if a.format == "structured":
        print(json.dumps({"values": [[p, q, v] for (p, q), v in sorted(f.values.items())],
                          "positive": io.multiset_records(pos), "negative": io.multiset_records(neg),
                          "invariants_equal": equal}))
    else:
        print("positive:\n" + render_multiset(pos))
        print("negative:\n" + render_multiset(neg))
        print(f"invariants equal: {'yes' if equal else 'no'}")
    return 0


def cmd_fixtures(a):
    fx = fixtures()
    if a.name:
        if a.name not in fx:
            raise UsageError(f"unknown fixture {a.name!r}; choose from {', '.join(sorted(fx))}")
        text = io.multiset_to_text(fx[a.name])
        if a.complex:
            text = io.complex_to_text(synthesize(fx[a.name]))
        _emit(text, a.output)
    else:
        for name in sorted(fx):
            print(f"{name:<12} {sum(fx[name].values()):>3} shapes")
    return 0


def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=["table", "structured"], default="table")
    ap = _Parser(prog="zigzag", description="Invariants and zigzag decompositions of double complexes.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[fmt], help="check the double complex relations")
    p.add_argument("file")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("invariants", parents=[fmt], help="all cohomological invariants")
    p.add_argument("file", help="complex file or multiset file")
    p.set_defaults(fn=cmd_invariants)

    p = sub.add_parser("decompose", parents=[fmt], help="multiset of zigzags and squares")
    p.add_argument("file", help="complex file or multiset file")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("compare", parents=[fmt], help="compare two complexes")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--quasi", dest="mode", action="store_const", const="quasi")
    g.add_argument("--local", dest="mode", action="store_const", const="local")
    g.add_argument("--iso", dest="mode", action="store_const", const="iso")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("synth", help="build the complex of a multiset")
    p.add_argument("file", nargs="?")
    p.add_argument("-o", "--output")
    p.add_argument("--random", type=int, metavar="N", help="random multiset of at most N shapes")
    p.add_argument("--size", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_synth)

    p = sub.add_parser("ce6", parents=[fmt], help="six-dimensional nilpotent family")
    p.add_argument("--eps", type=int, default=0)
    p.add_argument("--rho", type=int, default=0)
    for name in "ABCD":
        p.add_argument(f"--{name}", default="0")
    p.add_argument("-o", "--output")
    p.add_argument("--decompose", action="store_true")
    p.set_defaults(fn=cmd_ce6)

    p = sub.add_parser("almost-abelian", parents=[fmt], help="almost abelian Lie algebras")
    p.add_argument("--ks", required=True)
    p.add_argument("--k0", type=int, default=0)
    p.add_argument("-o", "--output")
    p.add_argument("--decompose", action="store_true")
    p.set_defaults(fn=cmd_almost_abelian)

    p = sub.add_parser("formal", help="formal counting")
    fsub = p.add_subparsers(dest="what", required=True, parser_class=_Parser)
    q = fsub.add_parser("rank")
    q.add_argument("n", type=int)
    q.set_defaults(fn=cmd_formal)
    q = fsub.add_parser("verify-rank")
    q.add_argument("--max", type=int, default=6)
    q.set_defaults(fn=cmd_formal)
    q = fsub.add_parser("kernel", parents=[fmt])
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--sign", choices=["+", "-"], required=True)
    q.add_argument("--values", help="'p,q:v;p,q:v;...'")
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(fn=cmd_formal)

    p = sub.add_parser("fixtures", help="list or export the worked examples")
    p.add_argument("name", nargs="?")
    p.add_argument("--complex", action="store_true", help="write the synthesized complex instead")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_fixtures)
    return ap


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return 1
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (ParseError, ValidationError, IntegrityError, NotRealizableError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
