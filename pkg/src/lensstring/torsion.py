"""Whitehead-torsion units of lens-space maps and the Dennis-trace correction term."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import reduce
from math import gcd, lcm

from .classify import homotopy_equivalent
from .cyclic import CyclicPoly, OneForm, dennis_dlog, invert_unit
from .equivariant import EqTensor, cobracket_pi_y, project_pi, pushforward_eq
from .errors import InvalidLensError, InvalidMultiplierError, InvalidTorsionExpression
from .loop import BiForm, LensPair, RhoClass, coproduct_rho, pushforward_biform, relevant_moduli, wedge_with_dlog

_FACTOR = re.compile(r"\(t(?:\^(\d+))?-1\)")


def parse_torsion_expression(text: str) -> tuple[list[int], list[int]]:
    """Parse ``"(t^7-1)(t^1-1)/((t^1-1)(t^1-1))"`` into exponent lists.

    Returns ``(numerator, denominator)``; ``"1"`` stands for an empty product.
    """
    s = re.sub(r"\s+", "", text)
    if not s:
        raise InvalidTorsionExpression("empty torsion expression")
    num_s, sep, den_s = s.partition("/")
    if sep and not den_s:
        raise InvalidTorsionExpression(f"missing denominator in {text!r}")
    den = []
    if den_s:
        try:
            den = _parse_product(den_s, text)
        except InvalidTorsionExpression:
            if not (den_s.startswith("(") and den_s.endswith(")")):
                raise
            den = _parse_product(den_s[1:-1], text)
    return _parse_product(num_s, text), den


def _parse_product(s: str, original: str) -> list[int]:
    if s == "1":
        return []
    if not s or _FACTOR.sub("", s):
        raise InvalidTorsionExpression(f"cannot parse {original!r}: expected factors like (t^a-1)")
    exps = [int(e) if e else 1 for e in _FACTOR.findall(s)]
    if any(e <= 0 for e in exps):
        raise InvalidTorsionExpression(f"exponents must be positive in {original!r}")
    return exps


def _int_poly_product(exps: list[int]) -> list[int]:
    poly = [1]
    for e in exps:
        nxt = [0] * (len(poly) + e)
        for i, c in enumerate(poly):
            nxt[i + e] += c
            nxt[i] -= c
        poly = nxt
    return poly


def _int_poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division in Z[t] by a monic (up to sign) divisor, coefficients low to high."""
    num = num[:]
    lead = den[-1]
    if abs(lead) != 1:
        raise InvalidTorsionExpression("divisor must have unit leading coefficient")
    dq = len(num) - len(den)
    if dq < 0:
        return [0], num
    quot = [0] * (dq + 1)
    for shift in range(dq, -1, -1):
        c = num[shift + len(den) - 1] * lead
        quot[shift] = c
        if c:
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    return quot, num[: len(den) - 1]


def working_modulus(n: int) -> int:
    """Least common multiple of the orders gcd(p, n) > 1; ``n`` when there are none."""
    mods = relevant_moduli(n)
    return reduce(lcm, mods, 1) if mods else n


def multiplier_is_realisable(source: LensPair, target: LensPair, s: int) -> bool:
    """Whether multiplication by ``s`` on pi_1 comes from a homotopy equivalence.

    Uses the linking-form criterion ``k' = +-s^2 k (mod n)``.
    """
    n = source.n
    return (target.k - s * s * source.k) % n == 0 or (target.k + s * s * source.k) % n == 0


@dataclass(frozen=True)
class LensMap:
    source: LensPair
    target: LensPair
    s: int
    torsion: str = "1"
    realisable: bool = field(init=False, compare=False)

    def __post_init__(self):
        if self.source.n != self.target.n:
            raise InvalidLensError("source and target must have the same fundamental group order")
        n = self.source.n
        if not 1 <= self.s <= n - 1 or gcd(self.s, n) != 1:
            raise InvalidMultiplierError(f"multiplier must be a unit in [1, {n - 1}], got {self.s}")
        if not homotopy_equivalent(n, self.source.k, self.target.k).equivalent:
            raise InvalidLensError(f"{self.source} and {self.target} are not homotopy equivalent")
        object.__setattr__(self, "realisable", multiplier_is_realisable(self.source, self.target, self.s))

    @property
    def n(self) -> int:
        return self.source.n

    @classmethod
    def identity(cls, space: LensPair) -> LensMap:
        return cls(space, space, 1, "1")


# L(9;1) -> L(9;4), l-component to 2l-component
L91_TO_L94 = LensMap(LensPair(9, 1), LensPair(9, 4), 2, "(t^7-1)(t^1-1)/((t^1-1)(t^1-1))")


@dataclass(frozen=True)
class TorsionUnit:
    unit: CyclicPoly
    provenance: str

    @property
    def inverse(self) -> CyclicPoly:
        return invert_unit(self.unit)

    @property
    def dlog(self) -> OneForm:
        return dennis_dlog(self.unit)


def torsion_unit(f: LensMap, modulus: int | None = None) -> TorsionUnit:
    """Evaluate the map's torsion expression as a unit of (Z/mZ)[t]/(t^n - 1).

    The quotient is computed by exact division in Z[t]; a nonzero remainder
    means the expression is not a polynomial and is rejected.
    """
    n = f.n
    m = working_modulus(n) if modulus is None else modulus
    num_e, den_e = parse_torsion_expression(f.torsion)
    quot, rem = _int_poly_divmod(_int_poly_product(num_e), _int_poly_product(den_e))
    if any(rem):
        raise InvalidTorsionExpression(f"{f.torsion!r} does not divide exactly in Z[t]")
    unit = CyclicPoly.from_terms(n, m, enumerate(quot))
    invert_unit(unit)
    return TorsionUnit(unit, f.torsion)


def correction_bi_form(f: LensMap, l: int) -> BiForm:
    """Pushed-forward product of the rotation class of component l with d log tau(f)."""
    dl = torsion_unit(f).dlog
    return pushforward_biform(wedge_with_dlog(f.source, l, dl), f.s)


def correction_term(f: LensMap, l: int) -> EqTensor:
    """Torsion correction in the transformation formula for the cobracket of pi_* y_l."""
    return project_pi(correction_bi_form(f, l))


@dataclass(frozen=True)
class TransformReport:
    l: int
    target_l: int
    lhs: EqTensor
    pushed: EqTensor
    correction: EqTensor

    @property
    def rhs(self) -> EqTensor:
        return self.pushed + self.correction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def discrepancy(self) -> EqTensor:
        return self.lhs - self.rhs

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "target_l": self.target_l,
            "lhs": self.lhs.to_json(),
            "pushed": self.pushed.to_json(),
            "correction": self.correction.to_json(),
            "rhs": self.rhs.to_json(),
            "discrepancy": self.discrepancy.to_json(),
            "holds": self.holds,
        }


def transform_check(f: LensMap, l: int, m_source: int = 0, m_target: int = 0) -> TransformReport:
    """Compare cobracket(target, s*l) with f_*(cobracket(source, l)) + correction."""
    target_l = (f.s * l) % f.n
    lhs = cobracket_pi_y(f.target, target_l, m_target).left
    pushed = pushforward_eq(cobracket_pi_y(f.source, l, m_source).left, f.s)
    return TransformReport(l, target_l, lhs, pushed, correction_term(f, l))


def coproduct_transform_check(f: LensMap, l: int, m: int = 0) -> bool:
    """The same comparison one level down, on coproduct bi-forms reduced to the working modulus."""
    wm = working_modulus(f.n)
    lhs = coproduct_rho(f.target, RhoClass((f.s * l) % f.n, m)).reduce(wm)
    pushed = pushforward_biform(coproduct_rho(f.source, RhoClass(l, m)).reduce(wm), f.s)
    return lhs == pushed + correction_bi_form(f, l)
