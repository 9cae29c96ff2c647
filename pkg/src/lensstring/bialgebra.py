"""Drinfeld compatibility between the string bracket and cobracket, in equivariant degree one.

Both sides land in H_1^{S^1} (x) H_1^{S^1}, represented by :class:`AlphaTensor`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from .equivariant import (
    AlphaVector,
    EqTensorPair,
    _ModTensor,
    cobracket_pi_y,
    project_pi_oneform,
    transfer_alpha,
    transfer_beta,
)
from .errors import LensStringError, UnsupportedDegreeError
from .loop import LensPair, _check_component, product_rho_form


class Kind(str, enum.Enum):
    PI_Y = "pi_y"
    BETA = "beta"
    ALPHA = "alpha"


_DEGREE = {Kind.PI_Y: 1, Kind.BETA: 0, Kind.ALPHA: 1}


@dataclass(frozen=True)
class EqClass:
    kind: Kind
    index: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if not 1 <= self.index <= self.n - 1:
            raise LensStringError(f"index must lie in [1, {self.n - 1}], got {self.index}")
        if self.kind is Kind.ALPHA and gcd(self.index, self.n) == 1:
            raise LensStringError(f"alpha_{self.index} is zero: gcd({self.index}, {self.n}) = 1")

    @property
    def degree(self) -> int:
        return _DEGREE[self.kind]

    @classmethod
    def pi_y(cls, l: int, n: int) -> EqClass:
        return cls(Kind.PI_Y, l, n)

    def __str__(self):
        return {Kind.PI_Y: f"pi*y{self.index}", Kind.BETA: f"b{self.index}", Kind.ALPHA: f"a{self.index}"}[self.kind]


class AlphaTensor(_ModTensor):
    """Formal sum of alpha_p (x) alpha_p2 with coefficients modulo gcd(p, p2, n)."""

    letters = ("a", "a")

    def _norm_key(self, key):
        p, p2 = key[0] % self.n, key[1] % self.n
        if gcd(p, self.n) == 1 or gcd(p2, self.n) == 1:
            return None
        return (p, p2)

    def modulus(self, key) -> int:
        return gcd(gcd(key[0], self.n), key[1])

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [{"p": p, "p2": p2, "c": c, "mod": self.modulus((p, p2))} for (p, p2), c in self.items()],
        }


def _require_pi_y(*classes: EqClass) -> None:
    for c in classes:
        if c.kind is not Kind.PI_Y:
            raise UnsupportedDegreeError(
                f"only classes of kind pi_y are modelled here, got {c.kind.value}"
            )


def ad_apply(space: LensPair, X: EqClass, Z: EqClass) -> AlphaVector:
    """Bracket of pi_* y_l with a class of kind beta or alpha.

    beta_q goes through its transfer ``q t^q dt/t``, the product with
    [rho_{l,m}] (component shift by l) and the projection; alpha_p transfers
    to zero.
    """
    _require_pi_y(X)
    _check_component(space, X.index)
    n = space.n
    if Z.kind is Kind.ALPHA:
        w = transfer_alpha(Z.index, n)
    elif Z.kind is Kind.BETA:
        w = transfer_beta(Z.index, n)
    else:
        raise UnsupportedDegreeError("ad of a pi_y class on a pi_y class lands outside degree one")
    return project_pi_oneform(product_rho_form(space, X.index, w))


def _ad_on_pair(space: LensPair, X: EqClass, pair: EqTensorPair) -> AlphaTensor:
    """(ad_X (x) 1 + 1 (x) ad_X) applied to an antisymmetrised cobracket value.

    ad_X vanishes on every alpha, so only the beta slot contributes.
    """
    n = space.n
    terms: dict = {}

    def bump(key, c):
        terms[key] = terms.get(key, 0) + c

    for (p, q), c in pair.left.items():
        for p2, d in ad_apply(space, X, EqClass(Kind.BETA, q, n)).items():
            bump((p, p2), c * d)
    for (p, q), c in pair.swapped.items():
        for p2, d in ad_apply(space, X, EqClass(Kind.BETA, q, n)).items():
            bump((p2, p), c * d)
    return AlphaTensor(n, terms)


def bialgebra_lhs(space: LensPair, X: EqClass, Y: EqClass) -> AlphaTensor:
    """Cobracket of the bracket of two pi_y classes.

    The bracket lands in H_3^{S^1}, which is torsion, and the transfer into the
    free group H_4 kills it, so the value is zero for every pair.
    """
    _require_pi_y(X, Y)
    _check_component(space, X.index)
    _check_component(space, Y.index)
    return AlphaTensor(space.n)


def bialgebra_rhs(space: LensPair, X: EqClass, Y: EqClass, m_x: int = 0, m_y: int = 0) -> AlphaTensor:
    """(ad_X (x) 1 + 1 (x) ad_X) cobr(Y) - (ad_Y (x) 1 + 1 (x) ad_Y) cobr(X).

    The second term is subtracted outright for |X| = |Y| = 1; this is the sign
    used in the worked counterexample on L(9;4), not (-1)^{|X||Y|} literally.
    """
    _require_pi_y(X, Y)
    first = _ad_on_pair(space, X, cobracket_pi_y(space, Y.index, m_y))
    second = _ad_on_pair(space, Y, cobracket_pi_y(space, X.index, m_x))
    return first - second


@dataclass(frozen=True)
class BialgebraVerdict:
    X: EqClass
    Y: EqClass
    lhs: AlphaTensor
    rhs: AlphaTensor

    @property
    def compatible(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"lhs": self.lhs.to_json(), "rhs": self.rhs.to_json(), "compatible": self.compatible}


def bialgebra_check(space: LensPair, X: EqClass, Y: EqClass, m_x: int = 0, m_y: int = 0) -> BialgebraVerdict:
    return BialgebraVerdict(X, Y, bialgebra_lhs(space, X, Y), bialgebra_rhs(space, X, Y, m_x, m_y))
