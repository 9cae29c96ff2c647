import random
from math import gcd

import pytest

from lensstring.classify import (
    PairVerdict,
    candidate_pairs,
    canonical_k,
    homeomorphic,
    homotopy_equivalent,
    search_smallest,
)
from lensstring.errors import InvalidLensError


def units(n):
    return [k for k in range(1, n) if gcd(k, n) == 1]


class TestRelations:
    def test_homotopy_examples(self):
        w = homotopy_equivalent(9, 1, 4)
        assert w and (w.q * w.q * w.sign - 4) % 9 == 0
        assert homotopy_equivalent(7, 1, 2)
        assert homotopy_equivalent(9, 1, 1)

    def test_homeomorphic_examples(self):
        assert not homeomorphic(9, 1, 4)
        assert homeomorphic(9, 4, 4)
        assert not homeomorphic(21, 2, 8)

    def test_invalid(self):
        with pytest.raises(InvalidLensError):
            homotopy_equivalent(9, 3, 1)
        with pytest.raises(InvalidLensError):
            homeomorphic(9, 1, 6)

    def test_exhaustive_grid(self):
        for n in range(2, 31):
            us = units(n)
            for k in us:
                assert homotopy_equivalent(n, k, k) and homeomorphic(n, k, k)
                for k2 in us:
                    h = bool(homotopy_equivalent(n, k, k2))
                    assert h == bool(homotopy_equivalent(n, k2, k))
                    assert homeomorphic(n, k, k2) == homeomorphic(n, k2, k)
                    if homeomorphic(n, k, k2):
                        assert h

    def test_verdict(self):
        v = PairVerdict.of(9, 1, 4)
        assert v.homotopy_equivalent and not v.homeomorphic


class TestSearch:
    def test_candidates(self):
        assert candidate_pairs(9) == [(1, 2)]
        assert canonical_k(9, 4) == 2
        assert (2, 8) in candidate_pairs(21)

    def test_small_range_has_pairs_but_no_hits(self):
        res = search_smallest(9)
        assert [(r.n, r.k, r.k2) for r in res.rows] == [(7, 1, 2), (9, 1, 2)]
        for conv in ("generator-sum", "component-union", "pi-family"):
            assert res.qualifying(conv) == []
        row = res.pair(9, 1, 2)
        assert row.coproduct["generator-sum"][0] != row.coproduct["generator-sum"][1]

    def test_smallest_21(self):
        res = search_smallest(24)
        for conv in ("generator-sum", "pi-family"):
            best = res.smallest(conv)
            assert (best.n, best.k, best.k2) == (21, 2, 8)
        assert res.smallest("component-union") is None
        row = res.pair(21, 8, 2)
        assert row.coproduct["pi-family"] == (20, 20)
        assert row.cobracket["pi-family"] == (19, 20)
        assert row.coproduct["generator-sum"] == (40, 40)
        assert row.cobracket["generator-sum"] == (39, 40)

    def test_parallel_matches_serial(self):
        assert search_smallest(16, workers=3) == search_smallest(16, workers=1)

    def test_order_independent(self, monkeypatch):
        import lensstring.classify as c

        original = c.candidate_pairs

        def shuffled(n):
            pairs = original(n)
            random.Random(n).shuffle(pairs)
            return pairs

        baseline = search_smallest(15)
        monkeypatch.setattr(c, "candidate_pairs", shuffled)
        assert search_smallest(15) == baseline

    def test_invalid_max_n(self):
        with pytest.raises(InvalidLensError):
            search_smallest(1)
