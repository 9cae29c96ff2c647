from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

import golden
import oracle
from lensstring.cyclic import OneForm
from lensstring.errors import InvalidComponentError, InvalidLensError, LensStringError
from lensstring.loop import (
    BiForm,
    HomologyTable,
    LensPair,
    RhoClass,
    coproduct_rho,
    coproduct_rho_literal,
    default_n_l,
    k_family_coproduct,
    product_rho_form,
    wedge_with_dlog,
)


@st.composite
def spaces(draw, max_n=24):
    n = draw(st.integers(2, max_n))
    k = draw(st.sampled_from([k for k in range(1, n) if gcd(k, n) == 1]))
    return LensPair(n, k)


class TestLensPair:
    def test_inverse_cached(self):
        assert LensPair(9, 4).r == 7
        assert LensPair(21, 8).r == 8

    @pytest.mark.parametrize("n,k", [(9, 3), (9, 0), (9, 9), (1, 1)])
    def test_rejects(self, n, k):
        with pytest.raises(InvalidLensError):
            LensPair(n, k)

    def test_homology_table(self):
        table = HomologyTable.for_lens(LensPair(9, 4))
        assert [str(g) for g in table.groups] == ["Z", "Z/9Z", "Z", "Z+Z/9Z", "Z"]
        with pytest.raises(LensStringError):
            table.degree(5)


class TestCoproduct:
    def test_row_zero_for_k1(self):
        assert coproduct_rho(LensPair(9, 1), RhoClass(1)).is_zero()

    def test_two_t_t2(self):
        assert coproduct_rho(LensPair(9, 1), 2).terms == {(1, 1): 2}

    def test_k4_rows(self):
        space = LensPair(9, 4)
        assert coproduct_rho(space, 1).render() == "7t^3t2^7+7t^5t2^5+7t^7t2^3 dt/t"
        assert coproduct_rho(space, 8).terms == golden.COPRODUCT_K4[8]

    def test_k2_frozen(self):
        # frozen from the oracle
        assert coproduct_rho(LensPair(9, 2), 1).terms == {(5, 5): 5}

    def test_zero_component(self):
        with pytest.raises(InvalidComponentError):
            coproduct_rho(LensPair(9, 1), 9)
        with pytest.raises(InvalidComponentError):
            RhoClass(0)

    def test_negative_m(self):
        with pytest.raises(LensStringError):
            coproduct_rho(LensPair(9, 1), RhoClass(1, -1))

    @given(spaces(), st.data())
    def test_counting_matches_literal_sum(self, space, data):
        l = data.draw(st.integers(1, space.n - 1))
        m = data.draw(st.integers(0, 3))
        assert coproduct_rho(space, RhoClass(l, m)) == coproduct_rho_literal(space, l, m)

    @given(spaces(), st.data())
    def test_matches_oracle(self, space, data):
        l = data.draw(st.integers(1, space.n - 1))
        m = data.draw(st.integers(0, 2))
        assert coproduct_rho(space, RhoClass(l, m)).terms == oracle.coproduct(space.n, space.k, l, m)

    @given(spaces(), st.data())
    def test_homogeneous(self, space, data):
        l = data.draw(st.integers(1, space.n - 1))
        m = data.draw(st.integers(0, 5))
        assert all((i + j - l) % space.n == 0 for (i, j), _ in coproduct_rho(space, RhoClass(l, m)).items())

    @given(spaces(), st.data())
    def test_swap_symmetric(self, space, data):
        l = data.draw(st.integers(1, space.n - 1))
        b = coproduct_rho(space, RhoClass(l, data.draw(st.integers(0, 5))))
        assert b.swap() == b

    @given(spaces(12), st.data())
    def test_m_shift(self, space, data):
        n, r = space.n, space.r
        l = data.draw(st.integers(1, n - 1))
        m = data.draw(st.integers(0, 5))
        diff = coproduct_rho(space, RhoClass(l, m + 1)) - coproduct_rho(space, RhoClass(l, m))
        expected = BiForm(n, {(i, l - i): r for i in range(1, n) if (l - i) % n})
        assert diff == expected


class TestKFamily:
    def test_n_l_one_is_zero(self):
        space = LensPair(9, 1)
        assert all(k_family_coproduct(space, l, 1).is_zero() for l in range(1, 9))

    def test_default_n_l_small(self):
        assert default_n_l(LensPair(9, 1), 1) == 2
        assert default_n_l(LensPair(9, 4), 1) == 2

    @given(spaces(12), st.data())
    def test_depends_on_product_only(self, space, data):
        n = space.n
        l = data.draw(st.integers(1, n - 1))
        a = data.draw(st.integers(1, 2 * n))
        b = data.draw(st.integers(1, 2 * n))
        if ((a - 1) * l - (b - 1) * l) % n == 0:
            assert k_family_coproduct(space, l, a) == k_family_coproduct(space, l, b)

    def test_homogeneous(self):
        for k in (1, 4):
            space = LensPair(9, k)
            for l in range(1, 9):
                assert all((i + j - l) % 9 == 0 for (i, j), _ in k_family_coproduct(space, l).items())


class TestProducts:
    def test_shift(self):
        space = LensPair(9, 4)
        assert product_rho_form(space, 1, OneForm.monomial(9, 9, 1)).terms() == {2: 1}
        assert product_rho_form(space, 8, OneForm.monomial(9, 9, 7, 7)).terms() == {6: 7}
        assert product_rho_form(space, 3, OneForm.zero(9, 9)).is_zero()

    def test_wedge_zero(self):
        assert wedge_with_dlog(LensPair(9, 1), 1, OneForm.zero(9, 3)).is_zero()

    def test_wedge_homogenised(self):
        w = OneForm.from_dt_terms(9, 3, {2: 2, 3: 2, 4: 1, 5: 1})
        b = wedge_with_dlog(LensPair(9, 1), 1, w)
        # (t - t2)(2t^2t2^6 + 2t^3t2^5 + t^4t2^4 + t^5t2^3) dt, then dt = t dt/t
        expected = {}
        for p, c in {2: 2, 3: 2, 4: 1, 5: 1}.items():
            j = 8 - p
            for (i2, j2), sgn in (((p + 1 + 1, j), 1), ((p + 1, j + 1), -1)):
                key = (i2 % 9, j2 % 9)
                expected[key] = (expected.get(key, 0) + sgn * c) % 3
        assert b == BiForm(9, expected, 3)
        assert b.m == 3


class TestBiForm:
    def test_drops_zero_index(self):
        assert BiForm(9, {(9, 1): 1, (1, 0): 3}).is_zero()

    def test_json_roundtrip(self):
        b = coproduct_rho(LensPair(9, 4), 3)
        assert BiForm.from_json(b.to_json()) == b
        r = b.reduce(3)
        assert BiForm.from_json(r.to_json()) == r

    def test_mismatch(self):
        with pytest.raises(LensStringError):
            BiForm(9, {}) + BiForm(9, {}, 3)
