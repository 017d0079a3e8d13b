from collections import Counter
from math import comb

import pytest

from zigzag import cohomology as co
from zigzag.complex import validate
from zigzag.decomposition import decompose, square_mults, zigzag_part
from zigzag.errors import DomainError, ValidationError
from zigzag.formal import fixtures
from zigzag.lie import (
    AlmostAbelianSpec, SixDimParams, StructureEquations, ab_formulas, almost_abelian, ce_complex,
    dec_ab_predict, monomial_d, no_square_criterion, no_square_value, six_dim_structure, sl2_c,
    sl2_conservation,
)
from zigzag.linalg import Scalar
from zigzag.shapes import OddZigzag, Square


def six(eps=0, rho=0, A=0, B=0, C=0, D=0):
    return ce_complex(six_dim_structure(SixDimParams(eps, rho, A, B, C, D)))


class TestStructureEquations:
    def test_conjugate_generator(self):
        # dω^1 = ω^1 ∧ ω̄^2 in n = 2, so dω̄^1 = ω̄^1 ∧ ω^2 = -ω^2 ∧ ω̄^1
        s = StructureEquations(2, {0: {(0, 3): 1}})
        assert s.generator_d(2) == {(1, 2): Scalar(-1)}

    def test_reject_02_terms(self):
        with pytest.raises(ValidationError):
            StructureEquations(2, {1: {(2, 3): 1}})

    def test_leibniz_sign(self):
        # d(ω^1 ∧ ω^2) with dω^2 = ω^1∧ω̄^1 and ω^1 closed: -ω^1 ∧ ω^1∧ω̄^1 = 0
        s = StructureEquations(2, {1: {(0, 2): 1}})
        assert monomial_d(s, (0, 1)) == {}
        # d(ω^2∧ω̄^2) = ω^{1 1̄ 2̄} - ω^2 ∧ dω̄^2 with dω̄^2 = -ω^{1 1̄}
        assert monomial_d(s, (1, 3)) == {(0, 2, 3): Scalar(1), (0, 1, 2): Scalar(-1)}

    def test_jacobi_failure(self):
        # dω^2 = ω^{1 2}, dω^1 = ω^{2 2̄}: d² ω^2 ≠ 0
        s = StructureEquations(2, {1: {(0, 1): 1}, 0: {(1, 3): 1}})
        with pytest.raises(ValidationError):
            ce_complex(s)

    def test_torus(self):
        C = ce_complex(almost_abelian(AlmostAbelianSpec((1,))))
        assert not C.del_h and not C.del_v
        assert C.dims == {(p, q): comb(2, p) * comb(2, q) for p in range(3) for q in range(3)}


class TestSixDim:
    def test_pair(self):
        L, R = six(0, 1, 1, 0, 0, 2), six(0, 1, 1, 0, 0, "1/2+1/2*i")
        assert validate(L) == validate(R) == []
        bl, br = co.invariant_bundle(L), co.invariant_bundle(R)
        for name in ("betti", "dolbeault", "bott_chern"):
            assert getattr(bl, name) == getattr(br, name)
        dl, dr = decompose(L), decompose(R)
        fx = fixtures()
        assert dl != dr
        assert dl[Square(1, 1)] == 1 and dr[Square(1, 1)] == 0
        diff = Counter(zigzag_part(dl))
        diff.subtract(zigzag_part(dr))
        target = Counter(fx["T_plus"])
        target.subtract(fx["T_minus"])
        assert +diff == +target and -diff == -target

    @pytest.mark.parametrize("prm,expected", [
        (SixDimParams(0, 1, 1, 0, 0, 2), False),
        (SixDimParams(0, 1, 1, 0, 0, "1/2+1/2*i"), True),
        (SixDimParams(1), True),
    ])
    def test_criterion_examples(self, prm, expected):
        assert no_square_criterion(prm) is expected
        assert (not square_mults(ce_complex(six_dim_structure(prm)))) is expected

    def test_criterion_value(self):
        assert no_square_value(SixDimParams(0, 1, 1, 0, 0, 2)) == -3

    def test_symmetric_multiset(self):
        # the multiset of a 3-dimensional structure is symmetric under both reflections
        for prm in [SixDimParams(0, 1, 1, 0, 0, 2), SixDimParams(0, 1, "i", 1, "1/2", "-1"),
                    SixDimParams(1, 1, 0, 1, 0, 0)]:
            m = decompose(ce_complex(six_dim_structure(prm)))
            assert m == Counter({_reflect(s, 3): n for s, n in m.items()})

    def test_domain(self):
        with pytest.raises(DomainError):
            SixDimParams(eps=2)


def _reflect(s, n):
    """Image under (p, q) -> (n-q, n-p) as a shape."""
    if isinstance(s, Square):
        return Square(n - 1 - s.q, n - 1 - s.p)
    comps = {(n - b, n - a) for a, b in s.chain()}
    for cand in _odd_candidates(comps):
        if set(cand.chain()) == comps:
            return cand
    raise AssertionError(s)


def _odd_candidates(comps):
    ps = [a for a, _ in comps]
    qs = [b for _, b in comps]
    for k in range(min(ps) + min(qs), max(ps) + max(qs) + 1):
        yield OddZigzag(min(ps), min(qs), k)
        yield OddZigzag(max(ps), max(qs), k)


KS = [(1,), (2,), (3,), (2, 2), (1, 2), (4,)]


class TestAlmostAbelian:
    def test_sl2_tables(self):
        assert sl2_c(AlmostAbelianSpec((2,)), 1, 1) == {1: 1, 3: 1}
        assert sl2_c(AlmostAbelianSpec((3,)), 1, 1) == {1: 1, 3: 1, 5: 1}
        assert sl2_c(AlmostAbelianSpec((3,)), 2, 0) == {3: 1}

    @pytest.mark.parametrize("ks", KS)
    def test_conservation(self, ks):
        s = AlmostAbelianSpec(ks)
        N = sum(ks)
        assert all(sl2_conservation(s, p, q) for p in range(N + 1) for q in range(N + 1))

    @pytest.mark.parametrize("ks", KS)
    def test_decomposition(self, ks):
        s = AlmostAbelianSpec(ks)
        C = ce_complex(almost_abelian(s))
        m = decompose(C)
        assert m == dec_ab_predict(s)
        assert all(isinstance(x, Square) or (isinstance(x, OddZigzag) and x.length <= 3) for x in m)

    @pytest.mark.parametrize("ks", KS)
    def test_formulas(self, ks):
        s = AlmostAbelianSpec(ks)
        C = ce_complex(almost_abelian(s))
        for p in range(s.n + 1):
            for q in range(s.n + 1):
                assert ab_formulas(s, p, q) == (co.dolbeault(C, p, q), co.bott_chern(C, p, q), co.aeppli(C, p, q))

    def test_square_counts(self):
        assert dec_ab_predict(AlmostAbelianSpec((2,)))[Square(1, 1)] == 1
        assert dec_ab_predict(AlmostAbelianSpec((3,)))[Square(1, 1)] == 4

    def test_example_values(self):
        assert ab_formulas(AlmostAbelianSpec((2,)), 1, 1)[:2] == (5, 5)

    def test_k0_refused(self):
        s = AlmostAbelianSpec((2,), k0=1)
        assert validate(ce_complex(almost_abelian(s))) == []
        with pytest.raises(DomainError):
            dec_ab_predict(s)

    def test_sl2_domain(self):
        with pytest.raises(DomainError):
            sl2_c(AlmostAbelianSpec((2,)), 3, 0)
