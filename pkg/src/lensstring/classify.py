"""Homotopy and homeomorphism classification of 3-dimensional lens spaces, and the pair search."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd

from .errors import InvalidLensError


def _check(n: int, *ks: int) -> None:
    if n < 2:
        raise InvalidLensError(f"n must be >= 2, got {n}")
    for k in ks:
        if gcd(k, n) != 1:
            raise InvalidLensError(f"gcd({k}, {n}) != 1")


@dataclass(frozen=True)
class HomotopyWitness:
    equivalent: bool
    q: int | None = None
    sign: int | None = None

    def __bool__(self):
        return self.equivalent


def homotopy_equivalent(n: int, k: int, k2: int) -> HomotopyWitness:
    """L(n;k) ~ L(n;k2) iff k*k2 = +-q^2 (mod n); returns the smallest witness q."""
    _check(n, k, k2)
    for q in range(n):
        for sign in (1, -1):
            if (k * k2 - sign * q * q) % n == 0:
                return HomotopyWitness(True, q, sign)
    return HomotopyWitness(False)


def homeomorphism_candidates(n: int, k: int) -> frozenset[int]:
    """The residues +-k, +-k^{-1} modulo n."""
    _check(n, k)
    inv = pow(k, -1, n)
    return frozenset(x % n for x in (k, -k, inv, -inv))


def homeomorphic(n: int, k: int, k2: int) -> bool:
    _check(n, k2)
    return k2 % n in homeomorphism_candidates(n, k)


@dataclass(frozen=True)
class PairVerdict:
    n: int
    k: int
    k2: int
    homotopy_equivalent: bool
    homeomorphic: bool
    witness: HomotopyWitness

    @classmethod
    def of(cls, n: int, k: int, k2: int) -> PairVerdict:
        w = homotopy_equivalent(n, k, k2)
        return cls(n, k, k2, w.equivalent, homeomorphic(n, k, k2), w)


def canonical_k(n: int, k: int) -> int:
    """Smallest representative of k up to homeomorphism."""
    return min(homeomorphism_candidates(n, k))


def candidate_pairs(n: int) -> list[tuple[int, int]]:
    """Homotopy-equivalent, non-homeomorphic pairs (k, k2), k < k2, one per homeomorphism class."""
    if n < 2:
        return []
    reps = sorted({canonical_k(n, k) for k in range(1, n) if gcd(k, n) == 1})
    out = []
    for i, a in enumerate(reps):
        for b in reps[i + 1 :]:
            if homotopy_equivalent(n, a, b):
                out.append((a, b))
    return out


@dataclass(frozen=True)
class PairCounts:
    n: int
    k: int
    k2: int
    coproduct: dict
    cobracket: dict

    def qualifies(self, convention: str) -> bool:
        a, b = self.coproduct[convention]
        c, d = self.cobracket[convention]
        return a == b and c != d

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "k2": self.k2,
            "coproduct": {c: list(v) for c, v in self.coproduct.items()},
            "cobracket": {c: list(v) for c, v in self.cobracket.items()},
        }


def _counts_for_n(n: int) -> list[PairCounts]:
    from .equivariant import Convention, count_nonzero, count_nonzero_coproduct
    from .loop import LensPair

    cache = {}

    def reports(k):
        if k not in cache:
            space = LensPair(n, k)
            cache[k] = (count_nonzero_coproduct(space), count_nonzero(space))
        return cache[k]

    out = []
    for a, b in candidate_pairs(n):
        (cop_a, cob_a), (cop_b, cob_b) = reports(a), reports(b)
        cop = {c.value: (cop_a.count_for(c), cop_b.count_for(c)) for c in Convention}
        cob = {c.value: (cob_a.count_for(c), cob_b.count_for(c)) for c in Convention}
        out.append(PairCounts(n, a, b, cop, cob))
    return out


@dataclass(frozen=True)
class SearchResult:
    max_n: int
    rows: tuple[PairCounts, ...]

    def qualifying(self, convention: str) -> list[PairCounts]:
        return [row for row in self.rows if row.qualifies(convention)]

    def smallest(self, convention: str) -> PairCounts | None:
        hits = self.qualifying(convention)
        return hits[0] if hits else None

    def pair(self, n: int, k: int, k2: int) -> PairCounts | None:
        key = (n, min(k, k2), max(k, k2))
        for row in self.rows:
            if (row.n, row.k, row.k2) == key:
                return row
        return None


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("LENSSTRING_THREADS", "1")))
    except ValueError:
        return 1


def search_smallest(max_n: int, workers: int | None = None) -> SearchResult:
    """Sweep every n <= max_n and count nonzero components for each candidate pair.

    Work fans out over n when ``workers`` (default: ``LENSSTRING_THREADS``) is
    above one; rows are merged in (n, k, k2) order either way.
    """
    if max_n < 2:
        raise InvalidLensError(f"max_n must be >= 2, got {max_n}")
    workers = _threads() if workers is None else workers
    ns = list(range(2, max_n + 1))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_counts_for_n, ns))
    else:
        chunks = [_counts_for_n(n) for n in ns]
    rows = sorted((row for chunk in chunks for row in chunk), key=lambda r: (r.n, r.k, r.k2))
    return SearchResult(max_n, tuple(rows))
