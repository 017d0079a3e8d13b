"""Exact computations with double complexes over Q(i): invariants and zigzag decompositions."""

from .complex import DoubleComplex, cut, direct_sum, synthesize, transpose, validate
from .cohomology import InvariantBundle, Window, invariant_bundle
from .decomposition import decompose, predict_invariants
from .linalg import ExactMatrix, Scalar
from .shapes import EvenZigzag, OddZigzag, Square, multiset

__all__ = [
    "DoubleComplex", "cut", "direct_sum", "synthesize", "transpose", "validate",
    "InvariantBundle", "Window", "invariant_bundle", "decompose", "predict_invariants",
    "ExactMatrix", "Scalar", "EvenZigzag", "OddZigzag", "Square", "multiset",
]
