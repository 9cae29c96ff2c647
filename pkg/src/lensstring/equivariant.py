"""S^1-equivariant projection and transfer rules, the string cobracket and component counts.

H_1^{S^1}(L_p M) is cyclic of order gcd(p, n) with generator alpha_p and
H_0^{S^1}(L_q M) is infinite cyclic with generator beta_q. The projection
sends ``c t^p t2^q dt/t`` to ``(c mod gcd(p, n)) alpha_p (x) beta_q``.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping

from .cyclic import OneForm
from .errors import InvalidMultiplierError, LensStringError
from .loop import (
    BiForm,
    LensPair,
    RhoClass,
    _check_component,
    coproduct_rho,
    default_n_l,
    k_family_coproduct,
)

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def _sym(letter: str, idx: int, unicode: bool) -> str:
    if unicode:
        return {"a": "α", "b": "β"}[letter] + str(idx).translate(_SUB)
    return f"{letter}{idx}"


def _balanced(c: int, mod: int) -> int:
    return c - mod if c > mod // 2 else c


def equivariant_h1_order(p: int, n: int) -> int:
    """Order of H_1^{S^1}(L_p M); 1 means the group vanishes."""
    return gcd(p % n, n) if p % n else n


class _ModTensor:
    """Sparse formal sum whose coefficient modulus depends on the key."""

    __slots__ = ("n", "_terms")
    letters: tuple[str, ...] = ()
    sep = "*"

    def __init__(self, n: int, terms: Mapping | Iterable = ()):
        self.n = n
        acc: dict[tuple, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            key = self._norm_key(key)
            if key is not None:
                acc[key] += c
        out = {}
        for key in sorted(acc):
            mod = self.modulus(key)
            if acc[key] % mod:
                out[key] = acc[key] % mod
        self._terms = out

    def _norm_key(self, key):
        raise NotImplementedError

    def modulus(self, key) -> int:
        raise NotImplementedError

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((type(self).__name__, self.n, tuple(self._terms.items())))

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, {self._terms})"

    def _same(self, other):
        if type(other) is not type(self) or other.n != self.n:
            raise LensStringError(f"cannot combine {self!r} with {other!r}")

    def __add__(self, other):
        self._same(other)
        acc = defaultdict(int, self._terms)
        for key, c in other.items():
            acc[key] += c
        return type(self)(self.n, acc)

    def __neg__(self):
        return type(self)(self.n, {key: -c for key, c in self.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int):
        return type(self)(self.n, {key: k * c for key, c in self.items()})

    def render(self, unicode: bool = False, signed: bool = False, letters=None) -> str:
        letters = letters or self.letters
        sep = "⊗" if unicode else self.sep
        parts = []
        for key, c in self.items():
            if signed:
                c = _balanced(c, self.modulus(key))
            key = key if isinstance(key, tuple) else (key,)
            sym = sep.join(_sym(letter, idx, unicode) for letter, idx in zip(letters, key))
            coeff = "" if c == 1 else "-" if c == -1 else str(c)
            parts.append(f"{coeff}{sym}")
        if not parts:
            return "0"
        return "".join(p if i == 0 or p.startswith("-") else "+" + p for i, p in enumerate(parts))


class EqTensor(_ModTensor):
    """Formal sum of alpha_p (x) beta_q with coefficients in Z/gcd(p, n)Z."""

    letters = ("a", "b")

    def _norm_key(self, key):
        p, q = key[0] % self.n, key[1] % self.n
        if p == 0 or q == 0 or gcd(p, self.n) == 1:
            return None
        return (p, q)

    def modulus(self, key) -> int:
        return gcd(key[0], self.n)

    def transpose_render(self, unicode: bool = False, signed: bool = False) -> str:
        """Render as beta_q (x) alpha_p."""
        flipped = _Flipped(self.n, {(q, p): c for (p, q), c in self.items()})
        return flipped.render(unicode=unicode, signed=signed)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [{"p": p, "q": q, "c": c, "mod": gcd(p, self.n)} for (p, q), c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> EqTensor:
        return cls(data["n"], [((t["p"], t["q"]), t["c"]) for t in data["terms"]])


class _Flipped(_ModTensor):
    letters = ("b", "a")

    def _norm_key(self, key):
        return key

    def modulus(self, key) -> int:
        return gcd(key[1], self.n)


class AlphaVector(_ModTensor):
    """Formal sum of alpha_p, coefficients in Z/gcd(p, n)Z."""

    letters = ("a",)

    def _norm_key(self, key):
        p = (key[0] if isinstance(key, tuple) else key) % self.n
        if p == 0 or gcd(p, self.n) == 1:
            return None
        return p

    def modulus(self, key) -> int:
        return gcd(key, self.n)

    def to_json(self) -> dict:
        return {"n": self.n, "terms": [{"p": p, "c": c, "mod": gcd(p, self.n)} for p, c in self.items()]}


@dataclass(frozen=True)
class EqTensorPair:
    """Antisymmetrised cobracket value.

    ``left`` holds the alpha (x) beta part. ``swapped`` holds the beta (x) alpha
    part under the same (p, q) keys, i.e. its entry at (p, q) is the
    coefficient of beta_q (x) alpha_p.
    """

    left: EqTensor
    swapped: EqTensor

    @classmethod
    def antisymmetric(cls, left: EqTensor) -> EqTensorPair:
        return cls(left, -left)

    def is_antisymmetric(self) -> bool:
        return self.swapped == -self.left

    def is_zero(self) -> bool:
        return self.left.is_zero() and self.swapped.is_zero()

    def render(self, unicode: bool = False, signed: bool = False) -> str:
        if self.is_zero():
            return "0"
        a = self.left.render(unicode, signed) if self.left else ""
        b = self.swapped.transpose_render(unicode, signed) if self.swapped else ""
        if a and b:
            return a + ("" if b.startswith("-") else "+") + b
        return a or b

    def to_json(self) -> dict:
        return {"left": self.left.to_json(), "swapped": self.swapped.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> EqTensorPair:
        return cls(EqTensor.from_json(data["left"]), EqTensor.from_json(data["swapped"]))


def project_pi(b: BiForm) -> EqTensor:
    """Equivariant projection of a bi-form."""
    for (p, _), c in b.items():
        g = gcd(p, b.n)
        if g > 1 and b.m % g:
            raise LensStringError(
                f"coefficient modulus {b.m} is too coarse for alpha_{p} of order {g}"
            )
    return EqTensor(b.n, b.items())


def project_pi_oneform(w: OneForm) -> AlphaVector:
    """The same rule in one slot: ``c t^a dt/t -> (c mod gcd(a, n)) alpha_a``."""
    for a, c in w.terms().items():
        g = gcd(a, w.n)
        if g > 1 and w.m and w.m % g:
            raise LensStringError(f"coefficient modulus {w.m} is too coarse for alpha_{a}")
    return AlphaVector(w.n, w.terms())


def transfer_beta(q: int, n: int, m: int | None = None) -> OneForm:
    """Transfer of the point class beta_q: the rotation class ``q t^q dt/t``."""
    m = n if m is None else m
    if q % n == 0:
        return OneForm.zero(n, m)
    return OneForm.monomial(n, m, q % n, q % n)


def transfer_alpha(p: int, n: int, m: int | None = None) -> OneForm:
    """Transfer of alpha_p: torsion mapping into a free group, hence zero."""
    return OneForm.zero(n, n if m is None else m)


def cobracket_pi_y(space: LensPair, l: int, m: int = 0) -> EqTensorPair:
    """Cobracket of pi_* y_l, realised through [rho_{l,m}]."""
    return EqTensorPair.antisymmetric(project_pi(coproduct_rho(space, RhoClass(l, m))))


def cobracket_k_family(space: LensPair, l: int, n_l: int | None = None) -> EqTensorPair:
    """Cobracket of the K-family generator y'_l, through its coproduct."""
    return EqTensorPair.antisymmetric(project_pi(k_family_coproduct(space, l, n_l)))


def k_family_closed_form(space: LensPair, l: int, n_l: int | None = None) -> EqTensor:
    """Closed-form K-family value for n = 9 with beta indices 6 - kl and 9 - kl.

    ``r (n_l - 1) l (alpha_3 (x) beta_{6-kl} + alpha_6 (x) beta_{9-kl})``, zero for
    l in {3, 6}. These indices do not satisfy p + q = l (mod 9), so this value
    differs from :func:`cobracket_k_family` in the beta slot while agreeing on
    coefficients and on which components are nonzero.
    """
    if space.n != 9:
        raise LensStringError("the closed form is only stated for n = 9")
    _check_component(space, l)
    if l % 3 == 0:
        return EqTensor(9)
    if n_l is None:
        n_l = default_n_l(space, l)
    c = space.r * (n_l - 1) * l
    kl = space.k * l
    return EqTensor(9, {(3, 6 - kl): c, (6, 9 - kl): c})


class Convention(str, enum.Enum):
    GENERATOR_SUM = "generator-sum"
    COMPONENT_UNION = "component-union"
    PI_FAMILY = "pi-family"


@dataclass(frozen=True)
class CountReport:
    n: int
    k: int
    pi_family_nonzero: frozenset
    k_family_nonzero: frozenset
    convention: Convention = Convention.GENERATOR_SUM
    m_sensitive: frozenset = frozenset()

    @property
    def generator_count(self) -> int:
        return len(self.pi_family_nonzero) + len(self.k_family_nonzero)

    @property
    def component_union_count(self) -> int:
        return len(self.pi_family_nonzero | self.k_family_nonzero)

    @property
    def pi_family_count(self) -> int:
        return len(self.pi_family_nonzero)

    def count_for(self, convention: Convention | str) -> int:
        convention = Convention(convention)
        if convention is Convention.GENERATOR_SUM:
            return self.generator_count
        if convention is Convention.COMPONENT_UNION:
            return self.component_union_count
        return self.pi_family_count

    @property
    def count(self) -> int:
        return self.count_for(self.convention)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "convention": self.convention.value,
            "count": self.count,
            "generator_count": self.generator_count,
            "component_union_count": self.component_union_count,
            "pi_family_count": self.pi_family_count,
            "pi_family_nonzero": sorted(self.pi_family_nonzero),
            "k_family_nonzero": sorted(self.k_family_nonzero),
            "m_sensitive": sorted(self.m_sensitive),
        }


def _m_sensitive(space: LensPair, evaluate) -> frozenset:
    out = set()
    for l in range(1, space.n):
        seen = {not evaluate(l, m).is_zero() for m in range(space.n)}
        if len(seen) > 1:
            out.add(l)
    return frozenset(out)


def count_nonzero(space: LensPair, convention: Convention | str = Convention.GENERATOR_SUM) -> CountReport:
    """Components on which the cobracket of each generator family is nonzero."""
    ls = range(1, space.n)
    pi = frozenset(l for l in ls if not cobracket_pi_y(space, l).is_zero())
    kf = frozenset(l for l in ls if not cobracket_k_family(space, l).is_zero())
    sens = _m_sensitive(space, lambda l, m: project_pi(coproduct_rho(space, RhoClass(l, m))))
    return CountReport(space.n, space.k, pi, kf, Convention(convention), sens)


def count_nonzero_coproduct(space: LensPair, convention: Convention | str = Convention.GENERATOR_SUM) -> CountReport:
    """Same counting applied to the coproduct before projection."""
    ls = range(1, space.n)
    pi = frozenset(l for l in ls if not coproduct_rho(space, l).is_zero())
    kf = frozenset(l for l in ls if not k_family_coproduct(space, l).is_zero())
    sens = _m_sensitive(space, lambda l, m: coproduct_rho(space, RhoClass(l, m)))
    return CountReport(space.n, space.k, pi, kf, Convention(convention), sens)


def pushforward_eq(t: EqTensor, s: int) -> EqTensor:
    """alpha_p (x) beta_q -> s alpha_{sp} (x) beta_{sq}; the factor s comes from t^a dt/t -> s t^(sa) dt/t."""
    if gcd(s, t.n) != 1:
        raise InvalidMultiplierError(f"multiplier {s} is not a unit modulo {t.n}")
    return EqTensor(t.n, [((s * p, s * q), s * c) for (p, q), c in t.items()])
