import random
from collections import Counter

import pytest
from hypothesis import given

from conftest import multisets
from zigzag.complex import (
    DoubleComplex, cut, direct_sum, random_basis_change, square_complex, synthesize, transpose, validate,
)
from zigzag.decomposition import decompose
from zigzag.errors import ParseError, ValidationError
from zigzag.io import complex_from_text, complex_to_text, multiset_from_text, multiset_to_text
from zigzag.linalg import ExactMatrix
from zigzag.shapes import (
    EvenZigzag, OddZigzag, Role, Square, expand_shape, footprint, make_shape, transpose_shape,
)


class TestShapes:
    def test_even_horizontal_roles(self):
        got = expand_shape(EvenZigzag(0, 1, 1, 2))
        assert got == [((0, 1), Role.OUT_H), ((1, 1), Role.IN_BOTH), ((1, 0), Role.OUT_BOTH), ((2, 0), Role.IN_H)]

    def test_even_vertical_components(self):
        assert [c for c, _ in expand_shape(EvenZigzag(1, 0, 2, 2))] == [(0, 2), (0, 1), (1, 1), (1, 0)]

    def test_looking_up(self):
        assert [c for c, _ in expand_shape(OddZigzag(2, 2, 2))] == [(0, 2), (0, 1), (1, 1), (1, 0), (2, 0)]

    def test_looking_down(self):
        assert [c for c, _ in expand_shape(OddZigzag(1, 1, 3))] == [(1, 2), (2, 2), (2, 1)]

    def test_dot(self):
        assert expand_shape(OddZigzag(2, 3, 5)) == [((2, 3), Role.DOT)]

    @pytest.mark.parametrize("p,q,k", [(0, 0, 3), (3, 1, 3), (4, 4, 5), (1, 1, 2)])
    def test_length(self, p, q, k):
        s = OddZigzag(p, q, k)
        assert len(expand_shape(s)) == s.length == 2 * abs(k - p - q) + 1
        # the majority of components sits in degree k
        degs = Counter(a + b for a, b in s.chain())
        assert degs[k] == max(degs.values())

    def test_malformed(self):
        with pytest.raises(ValidationError):
            EvenZigzag(0, 0, 3, 1)
        with pytest.raises(ValidationError):
            EvenZigzag(0, 0, 1, 0)
        with pytest.raises(ValidationError):
            make_shape("triangle", 0, 0)

    def test_square_roles(self):
        assert {r for _, r in expand_shape(Square(0, 0))} == {Role.SQ_LL, Role.SQ_LR, Role.SQ_UL, Role.SQ_UR}


class TestValidate:
    def test_square_is_valid(self):
        assert validate(square_complex()) == []

    def test_flipped_square_sign(self):
        C = square_complex()
        bad = DoubleComplex(C.dims, C.del_h, {**C.del_v, (1, 0): ExactMatrix.from_rows([[1]])})
        v = validate(bad)
        assert [(x.kind, x.bidegree) for x in v] == [("anticommute", (0, 0))]

    def test_wrong_shape_rejected(self):
        with pytest.raises(ValidationError):
            DoubleComplex({(0, 0): 1, (1, 0): 1}, {(0, 0): ExactMatrix.zeros(2, 1)})

    def test_square_zero_violation(self):
        C = DoubleComplex({(0, 0): 1, (1, 0): 1, (2, 0): 1},
                          {(0, 0): ExactMatrix.from_rows([[1]]), (1, 0): ExactMatrix.from_rows([[1]])})
        assert [x.kind for x in validate(C)] == ["del_h^2"]

    @given(multisets())
    def test_synthesized_complexes_are_valid(self, m):
        C = synthesize(m)
        assert validate(C) == []
        assert C.dims == {b: n for b, n in footprint(m).items() if n}


class TestOperations:
    def test_cut_example(self):
        C = synthesize(Counter({OddZigzag(4, 4, 5): 1}))
        D = cut(cut(C, "above", 2), "right", 3)
        assert decompose(D) == Counter({OddZigzag(2, 1, 4): 1})

    @pytest.mark.parametrize("side", ["above", "below", "left", "right"])
    def test_cut_idempotent_and_valid(self, side):
        C = synthesize(Counter({OddZigzag(4, 4, 5): 1, Square(1, 1): 2, EvenZigzag(0, 3, 1, 3): 1}))
        D = cut(C, side, 2)
        assert validate(D) == []
        assert cut(D, side, 2) == D

    def test_cut_bad_side(self):
        with pytest.raises(ValidationError):
            cut(square_complex(), "diagonal", 0)

    @given(multisets(), multisets())
    def test_direct_sum_decomposes_as_union(self, m1, m2):
        C = direct_sum(synthesize(m1), synthesize(m2))
        assert validate(C) == []
        assert decompose(C) == m1 + m2

    @given(multisets())
    def test_transpose(self, m):
        C = synthesize(m)
        T = transpose(C)
        assert validate(T) == []
        assert transpose(T) == C
        assert decompose(T) == Counter({transpose_shape(s): n for s, n in m.items()})

    def test_basis_change_keeps_relations(self):
        C = synthesize(Counter({Square(0, 0): 2, OddZigzag(1, 1, 3): 2}))
        D = random_basis_change(C, random.Random(0), gaussian=True)
        assert validate(D) == []
        assert D != C


class TestFiles:
    @given(multisets())
    def test_complex_roundtrip(self, m):
        C = synthesize(m)
        assert complex_from_text(complex_to_text(C)) == C

    def test_complex_scalars(self):
        C = random_basis_change(square_complex(), random.Random(1), gaussian=True)
        assert complex_from_text(complex_to_text(C)) == C

    @given(multisets())
    def test_multiset_roundtrip(self, m):
        text = multiset_to_text(m)
        assert multiset_from_text(text) == m
        assert multiset_to_text(multiset_from_text(text)) == text

    def test_parse_error_position(self):
        with pytest.raises(ParseError, match="line 2"):
            complex_from_text('{"dims": [[0,0,1]],\n "del_h": [[0,0,}')

    def test_matrix_size_mismatch(self):
        with pytest.raises(ValidationError):
            complex_from_text('{"dims": [[0,0,1],[1,0,1]], "del_h": [[0,0,[["1","2"]]]]}')

    def test_bad_scalar(self):
        with pytest.raises(ParseError):
            complex_from_text('{"dims": [[0,0,1],[1,0,1]], "del_h": [[0,0,[["x"]]]]}')
