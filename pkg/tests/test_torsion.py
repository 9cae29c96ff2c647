import pytest
from hypothesis import given
from hypothesis import strategies as st

import golden
from lensstring.cyclic import CyclicPoly, poly_mul
from lensstring.equivariant import EqTensor, cobracket_pi_y
from lensstring.errors import InvalidLensError, InvalidMultiplierError, InvalidTorsionExpression
from lensstring.loop import LensPair
from lensstring.torsion import (
    L91_TO_L94,
    LensMap,
    correction_bi_form,
    correction_term,
    multiplier_is_realisable,
    parse_torsion_expression,
    torsion_unit,
    transform_check,
    working_modulus,
)


class TestParser:
    def test_shipped_expression(self):
        assert parse_torsion_expression("(t^7-1)(t^1-1)/((t^1-1)(t^1-1))") == ([7, 1], [1, 1])

    def test_variants(self):
        assert parse_torsion_expression("(t^7-1)(t-1)/(t-1)(t-1)") == ([7, 1], [1, 1])
        assert parse_torsion_expression("1") == ([], [])
        assert parse_torsion_expression(" (t^3 - 1) / (t - 1) ") == ([3], [1])

    @pytest.mark.parametrize("bad", ["", "t^7", "(t^7-1)/", "(t^0-1)", "(t^7+1)"])
    def test_rejects(self, bad):
        with pytest.raises(InvalidTorsionExpression):
            parse_torsion_expression(bad)


class TestUnit:
    def test_shipped(self):
        tu = torsion_unit(L91_TO_L94)
        assert tu.unit.terms() == golden.TORSION_UNIT
        assert tu.unit.m == 3
        assert tu.inverse.terms() == golden.TORSION_INVERSE
        assert tu.dlog.dt_coeffs() == golden.DLOG_DT

    def test_identity(self):
        tu = torsion_unit(LensMap.identity(LensPair(9, 1)))
        assert tu.unit == CyclicPoly.one(9, 3)
        assert tu.dlog.is_zero()

    def test_inexact_division(self):
        f = LensMap(LensPair(9, 1), LensPair(9, 4), 2, "(t^2-1)/(t^3-1)")
        with pytest.raises(InvalidTorsionExpression):
            torsion_unit(f)

    def test_working_modulus(self):
        assert working_modulus(9) == 3
        assert working_modulus(12) == 12
        assert working_modulus(7) == 7


class TestLensMap:
    def test_realisable(self):
        assert L91_TO_L94.realisable
        assert multiplier_is_realisable(LensPair(9, 1), LensPair(9, 4), 7)
        assert not multiplier_is_realisable(LensPair(9, 1), LensPair(9, 4), 4)

    def test_rejects(self):
        with pytest.raises(InvalidMultiplierError):
            LensMap(LensPair(9, 1), LensPair(9, 4), 3)
        with pytest.raises(InvalidLensError):
            LensMap(LensPair(9, 1), LensPair(7, 1), 1)
        with pytest.raises(InvalidLensError):
            LensMap(LensPair(5, 1), LensPair(5, 2), 1)


class TestCorrection:
    def test_trivial_torsion(self):
        f = LensMap.identity(LensPair(9, 4))
        assert all(correction_term(f, l).is_zero() for l in range(1, 9))

    def test_l1_value(self):
        # frozen from a hand expansion of (t^2 - t2^2)(...)2t^2 dt/t, see ledger
        assert correction_term(L91_TO_L94, 1).terms == {(6, 5): 2}

    def test_linear_in_dlog(self):
        squared = LensMap(
            LensPair(9, 1), LensPair(9, 4), 2, "(t^7-1)(t^7-1)(t^1-1)(t^1-1)/((t^1-1)(t^1-1)(t^1-1)(t^1-1))"
        )
        u = torsion_unit(L91_TO_L94).unit
        assert torsion_unit(squared).unit == poly_mul(u, u)
        for l in range(1, 9):
            assert correction_term(squared, l) == correction_term(L91_TO_L94, l).scale(2)

    def test_bi_form_modulus(self):
        assert correction_bi_form(L91_TO_L94, 1).m == 3


class TestTransform:
    @given(st.sampled_from([(9, 1), (9, 4), (7, 2), (12, 5)]), st.data())
    def test_identity_map(self, nk, data):
        space = LensPair(*nk)
        l = data.draw(st.integers(1, space.n - 1))
        assert transform_check(LensMap.identity(space), l).holds

    def test_report_json(self):
        rep = transform_check(L91_TO_L94, 5)
        assert rep.holds
        data = rep.to_json()
        assert data["target_l"] == 1 and data["holds"] is True
        assert EqTensor.from_json(data["lhs"]) == cobracket_pi_y(LensPair(9, 4), 1).left

    def test_shipped_map_sweep_frozen(self):
        # frozen verdicts of the faithful pipeline; only l = 5 agrees
        assert [l for l in range(1, 9) if transform_check(L91_TO_L94, l).holds] == [5]
