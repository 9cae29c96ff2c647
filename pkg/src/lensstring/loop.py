"""Non-equivariant loop homology of L(n;k) and the string coproduct of rho-classes.

A class ``t^i t2^j dt/t`` lives in H_1(L_i M) (x) H_0(L_j M). Monomials with
``i == 0`` or ``j == 0`` are zero in the relative quotient and are never stored.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping

from .cyclic import OneForm, _check_multiplier
from .errors import InvalidComponentError, InvalidLensError, LensStringError


@dataclass(frozen=True)
class LensPair:
    """Lens space L(n;k) with the inverse ``r`` of ``k`` modulo ``n`` cached."""

    n: int
    k: int
    r: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 2:
            raise InvalidLensError(f"n must be >= 2, got {self.n}")
        if not 1 <= self.k <= self.n - 1:
            raise InvalidLensError(f"k must lie in [1, {self.n - 1}], got {self.k}")
        if gcd(self.k, self.n) != 1:
            raise InvalidLensError(f"gcd(k, n) must be 1, got gcd({self.k}, {self.n})")
        object.__setattr__(self, "r", pow(self.k, -1, self.n))

    def __str__(self):
        return f"L({self.n};{self.k})"


@dataclass(frozen=True)
class RhoClass:
    l: int
    m: int = 0

    def __post_init__(self):
        if self.l == 0:
            raise InvalidComponentError("rho-classes are only defined for l != 0")


@dataclass(frozen=True)
class GroupSignature:
    """Finitely generated abelian group Z^rank + sum Z/d."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self):
        parts = ["Z"] * self.rank + [f"Z/{d}Z" for d in self.torsion]
        return "+".join(parts) or "0"


@dataclass(frozen=True)
class HomologyTable:
    """H_r(L_l M) for r <= 4; identical for every component l."""

    n: int
    groups: tuple[GroupSignature, ...]

    @classmethod
    def for_lens(cls, space: LensPair) -> HomologyTable:
        n = space.n
        return cls(
            n,
            (
                GroupSignature(1),
                GroupSignature(0, (n,)),
                GroupSignature(1),
                GroupSignature(1, (n,)),
                GroupSignature(1),
            ),
        )

    def degree(self, r: int) -> GroupSignature:
        if not 0 <= r < len(self.groups):
            raise LensStringError(f"degree {r} is not tabulated (0..{len(self.groups) - 1})")
        return self.groups[r]


class BiForm:
    """Sparse element of H_1(LM) (x) H_0(LM) modulo the constant-loop parts.

    Coefficients are reduced modulo ``m`` (default ``n``); zero coefficients and
    monomials with a zero index are dropped on construction.
    """

    __slots__ = ("n", "m", "_terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, int], int] | Iterable = (), m: int | None = None):
        self.n = n
        self.m = n if m is None else m
        acc: dict[tuple[int, int], int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (i, j), c in items:
            i, j = i % n, j % n
            if i and j:
                acc[(i, j)] += c
        self._terms = {key: c % self.m for key, c in sorted(acc.items()) if c % self.m}

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if not isinstance(other, BiForm):
            return NotImplemented
        return (self.n, self.m, self._terms) == (other.n, other.m, other._terms)

    def __hash__(self):
        return hash((self.n, self.m, tuple(self._terms.items())))

    def __repr__(self):
        return f"BiForm(n={self.n}, m={self.m}, {self._terms})"

    def _compat(self, other: BiForm):
        if (self.n, self.m) != (other.n, other.m):
            raise LensStringError(
                f"BiForm mismatch: (n={self.n}, m={self.m}) vs (n={other.n}, m={other.m})"
            )

    def __add__(self, other: BiForm) -> BiForm:
        self._compat(other)
        acc = defaultdict(int, self._terms)
        for key, c in other.items():
            acc[key] += c
        return BiForm(self.n, acc, self.m)

    def __neg__(self) -> BiForm:
        return BiForm(self.n, {key: -c for key, c in self.items()}, self.m)

    def __sub__(self, other: BiForm) -> BiForm:
        return self + (-other)

    def scale(self, k: int) -> BiForm:
        return BiForm(self.n, {key: k * c for key, c in self.items()}, self.m)

    def reduce(self, m: int) -> BiForm:
        if self.m % m:
            raise LensStringError(f"cannot reduce modulus {self.m} to {m}")
        return BiForm(self.n, self._terms, m)

    def swap(self) -> BiForm:
        return BiForm(self.n, {(j, i): c for (i, j), c in self.items()}, self.m)

    def render(self) -> str:
        if not self._terms:
            return "0"
        body = "+".join(f"{'' if c == 1 else c}t^{i}t2^{j}" for (i, j), c in self.items())
        return f"{body} dt/t"

    def to_json(self) -> dict:
        data = {"n": self.n, "terms": [{"i": i, "j": j, "c": c} for (i, j), c in self.items()]}
        if self.m != self.n:
            data["m"] = self.m
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> BiForm:
        return cls(data["n"], [((t["i"], t["j"]), t["c"]) for t in data["terms"]], data.get("m"))


def _check_component(space: LensPair, l: int) -> None:
    if l % space.n == 0 or not 1 <= l <= space.n - 1:
        raise InvalidComponentError(
            f"component index must lie in [1, {space.n - 1}], got {l}"
            + (" (the coproduct on the constant-loop component is zero by definition)" if l % space.n == 0 else "")
        )


def _count_in_class(total: int, residue: int, n: int) -> int:
    """Number of a in [1, total] with a = residue (mod n)."""
    if total <= 0:
        return 0
    first = residue % n or n
    return 0 if first > total else (total - first) // n + 1


def coproduct_rho(space: LensPair, c: RhoClass | int, m: int | None = None) -> BiForm:
    """String coproduct of [rho_{l,m}] projected to H_1 (x) H_0.

    ``sum_{a=1}^{l-1} t^a t2^(l-a) + r * sum_{a=1}^{N-1} t^(ra) t2^(r(N-a))`` with
    ``N = k*l + n*m``. The second sum is evaluated by counting how many ``a``
    fall into each residue class, so its cost does not grow with ``m``.
    """
    if isinstance(c, int):
        c = RhoClass(c, 0 if m is None else m)
    n, k, r = space.n, space.k, space.r
    l, mm = c.l, c.m
    _check_component(space, l)
    if mm < 0:
        raise LensStringError(f"winding parameter m must be >= 0, got {mm}")
    N = k * l + n * mm
    terms: dict[tuple[int, int], int] = defaultdict(int)
    for a in range(1, l):
        terms[(a, l - a)] += 1
    # t^(ra) t2^(r(N-a)) only depends on a mod n
    for a0 in range(n):
        cnt = _count_in_class(N - 1, a0, n)
        if cnt:
            terms[(r * a0, r * (N - a0))] += r * cnt
    return BiForm(n, terms)


def coproduct_rho_literal(space: LensPair, l: int, m: int = 0) -> BiForm:
    """Term-by-term evaluation of the same formula; used as an oracle."""
    n, k, r = space.n, space.k, space.r
    _check_component(space, l)
    N = k * l + n * m
    terms: dict[tuple[int, int], int] = defaultdict(int)
    for a in range(1, l):
        terms[(a, l - a)] += 1
    for a in range(1, N):
        terms[(r * a, r * (N - a))] += r
    return BiForm(n, terms)


def relevant_moduli(n: int) -> list[int]:
    """The distinct orders gcd(p, n) > 1 of the equivariant H_1 groups."""
    return sorted({gcd(p, n) for p in range(1, n) if gcd(p, n) > 1})


def default_n_l(space: LensPair, l: int) -> int:
    """Normalisation of the K-family generator.

    Smallest ``n_l >= 2`` such that ``r*(n_l - 1)*l = 1`` modulo every
    ``g = gcd(p, n) > 1`` for which that congruence is solvable (``l`` a unit
    mod ``g``). With no such ``g`` the answer is 2.
    """
    n, r = space.n, space.r
    _check_component(space, l)
    targets = [g for g in relevant_moduli(n) if gcd(l, g) == 1]
    for nl in range(2, n + 2):
        coeff = r * (nl - 1) * l
        if all(coeff % g == 1 for g in targets):
            return nl
    raise AssertionError("unreachable: n_l - 1 ranges over all residues mod n")


def k_family_coproduct(space: LensPair, l: int, n_l: int | None = None) -> BiForm:
    """Coproduct of the K-family generator: rho(l, 1 + n_l*l) - rho(l, 1 + l)."""
    _check_component(space, l)
    if n_l is None:
        n_l = default_n_l(space, l)
    if n_l < 0:
        raise LensStringError(f"n_l must be >= 0, got {n_l}")
    return coproduct_rho(space, RhoClass(l, 1 + n_l * l)) - coproduct_rho(space, RhoClass(l, 1 + l))


def product_rho_form(space: LensPair, c: RhoClass | int, w: OneForm) -> OneForm:
    """String product of [rho_{l,m}] with a degree-one class: shifts the component by l."""
    l = c.l if isinstance(c, RhoClass) else c
    if w.n != space.n:
        raise LensStringError(f"form over n={w.n} used on {space}")
    return OneForm.from_terms(w.n, w.m, [(l + q, c_q) for q, c_q in w.terms().items()])


def wedge_with_dlog(space: LensPair, l: int, w: OneForm) -> BiForm:
    """Product of the rotation class of the l-component with a 1-form.

    Each ``t^p dt`` is made bihomogeneous as ``t^p t2^(n-1-p) dt``, multiplied by
    ``t^l - t2^l`` and rewritten in the ``dt/t`` basis. Coefficients stay in
    the modulus of ``w``.
    """
    n = space.n
    if w.n != n:
        raise LensStringError(f"form over n={w.n} used on {space}")
    terms: dict[tuple[int, int], int] = defaultdict(int)
    for p, c in w.dt_coeffs().items():
        j = (n - 1 - p) % n
        # dt = t * dt/t moves the first exponent up by one
        terms[(l + p + 1, j)] += c
        terms[(p + 1, j + l)] -= c
    return BiForm(n, terms, w.m or None)


def pushforward_biform(b: BiForm, s: int) -> BiForm:
    """t^i t2^j dt/t -> s t^(si) t2^(sj) dt/t."""
    _check_multiplier(s, b.n)
    return BiForm(b.n, [((s * i, s * j), s * c) for (i, j), c in b.items()], b.m)
