"""Arithmetic in (Z/mZ)[t]/(t^n - 1) and its module of formal 1-forms.

Values are immutable. A modulus ``m == 0`` means integer coefficients.
One-forms are always stored in the ``dt/t`` basis: the entry at index ``a``
is the coefficient of ``t^a dt/t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping

from .errors import DimensionError, InvalidMultiplierError, NotInvertibleError, LensStringError


def _reduce(c: int, m: int) -> int:
    return c % m if m else c


def _smallest_prime_factor(d: int) -> int:
    p = 2
    while p * p <= d:
        if d % p == 0:
            return p
        p += 1
    return d


@dataclass(frozen=True)
class _Residues:
    n: int
    m: int
    coeffs: tuple

    def __post_init__(self):
        if self.n < 1:
            raise LensStringError(f"group order must be positive, got {self.n}")
        if self.m < 0:
            raise LensStringError(f"coefficient modulus must be >= 0, got {self.m}")
        if len(self.coeffs) != self.n:
            raise DimensionError(f"expected {self.n} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(_reduce(int(c), self.m) for c in self.coeffs))

    @classmethod
    def from_terms(cls, n: int, m: int, terms: Mapping[int, int] | Iterable[tuple[int, int]]):
        vec = [0] * n
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, c in items:
            vec[exp % n] += c
        return cls(n, m, tuple(vec))

    @classmethod
    def zero(cls, n: int, m: int):
        return cls(n, m, (0,) * n)

    @classmethod
    def monomial(cls, n: int, m: int, exp: int, coeff: int = 1):
        return cls.from_terms(n, m, {exp: coeff})

    def __getitem__(self, exp: int) -> int:
        return self.coeffs[exp % self.n]

    def terms(self) -> dict[int, int]:
        return {a: c for a, c in enumerate(self.coeffs) if c}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if (self.n, self.m) != (other.n, other.m):
            raise DimensionError(
                f"ring mismatch: (n={self.n}, m={self.m}) vs (n={other.n}, m={other.m})"
            )

    def __add__(self, other):
        self._check(other)
        return type(self)(self.n, self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return type(self)(self.n, self.m, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return type(self)(self.n, self.m, tuple(-a for a in self.coeffs))

    def scale(self, k: int):
        return type(self)(self.n, self.m, tuple(k * a for a in self.coeffs))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "terms": [{"exp": a, "coeff": c} for a, c in self.terms().items()],
        }

    @classmethod
    def from_json(cls, data: Mapping):
        return cls.from_terms(
            data["n"], data["m"], [(t["exp"], t["coeff"]) for t in data["terms"]]
        )


class CyclicPoly(_Residues):
    """Element of the group ring (Z/mZ)[Z/nZ], written in the generator t."""

    def __mul__(self, other):
        if isinstance(other, CyclicPoly):
            return poly_mul(self, other)
        if isinstance(other, OneForm):
            return form_mul(self, other)
        return NotImplemented

    @classmethod
    def one(cls, n: int, m: int) -> CyclicPoly:
        return cls.monomial(n, m, 0)

    def render(self) -> str:
        return _render_terms(self.terms()) or "0"


class OneForm(_Residues):
    """Formal 1-form sum c_a t^a dt/t."""

    def render(self, basis: str = "dt/t") -> str:
        if basis == "dt/t":
            body = _render_terms(self.terms())
        elif basis == "dt":
            body = _render_terms({(a - 1) % self.n: c for a, c in self.terms().items()})
        else:
            raise ValueError(f"unknown basis {basis!r}")
        return f"{body} {basis}" if body else "0"

    def dt_coeffs(self) -> dict[int, int]:
        """Coefficients in the ``dt`` basis, ``t^a dt/t = t^(a-1) dt``."""
        return {(a - 1) % self.n: c for a, c in self.terms().items()}

    @classmethod
    def from_dt_terms(cls, n: int, m: int, terms: Mapping[int, int]) -> OneForm:
        return cls.from_terms(n, m, {(p + 1) % n: c for p, c in terms.items()})


def _render_terms(terms: Mapping[int, int]) -> str:
    parts = []
    for a in sorted(terms):
        c = terms[a]
        if a == 0:
            parts.append(str(c))
        else:
            parts.append(f"{'' if c == 1 else c}t^{a}")
    return "+".join(parts)


def poly_mul(a: CyclicPoly, b: CyclicPoly) -> CyclicPoly:
    """Cyclic convolution with exponents mod n and coefficients mod m."""
    a._check(b)
    n = a.n
    out = [0] * n
    for i, ca in enumerate(a.coeffs):
        if not ca:
            continue
        for j, cb in enumerate(b.coeffs):
            if cb:
                out[(i + j) % n] += ca * cb
    return CyclicPoly(n, a.m, tuple(out))


def form_mul(p: CyclicPoly, w: OneForm) -> OneForm:
    """Module action of the group ring on 1-forms."""
    if (p.n, p.m) != (w.n, w.m):
        raise DimensionError(f"ring mismatch: (n={p.n}, m={p.m}) vs (n={w.n}, m={w.m})")
    prod = poly_mul(p, CyclicPoly(w.n, w.m, w.coeffs))
    return OneForm(w.n, w.m, prod.coeffs)


def coerce(x: _Residues, m: int):
    """Reduce coefficients from modulus ``x.m`` to a divisor ``m``."""
    if m <= 0:
        raise LensStringError("target modulus must be positive")
    if x.m and x.m % m:
        raise LensStringError(f"cannot reduce modulus {x.m} to {m}: {m} does not divide {x.m}")
    return type(x)(x.n, m, x.coeffs)


def de_rham(p: CyclicPoly) -> OneForm:
    """Formal differential ``sum c_a t^a -> sum a*c_a t^a dt/t``.

    Exponents are taken as canonical representatives in [0, n). The result
    satisfies the Leibniz rule exactly when ``m`` divides ``n``.
    """
    return OneForm(p.n, p.m, tuple(a * c for a, c in enumerate(p.coeffs)))


def circulant_matrix(u: CyclicPoly) -> list[list[int]]:
    """Matrix of multiplication by ``u``: ``(u*v)_i = sum_j C[i][j] v_j``."""
    n = u.n
    return [[u.coeffs[(i - j) % n] for j in range(n)] for i in range(n)]


def solve_mod(matrix: list[list[int]], rhs: list[int], m: int) -> list[int]:
    """Solve a square system over Z/mZ.

    Column reduction uses extended-gcd row combinations, so a pivot is found
    whenever the column generates the unit ideal even if no single entry is a
    unit (e.g. entries 2 and 3 modulo 6).
    """
    n = len(matrix)
    A = [[x % m for x in row] + [b % m] for row, b in zip(matrix, rhs)]
    for col in range(n):
        for row in range(col + 1, n):
            a, b = A[col][col], A[row][col]
            if b == 0:
                continue
            g, x, y = _ext_gcd(a, b)
            top = [(x * p + y * q) % m for p, q in zip(A[col], A[row])]
            bot = [((-b // g) * p + (a // g) * q) % m for p, q in zip(A[col], A[row])]
            A[col], A[row] = top, bot
        pivot = A[col][col]
        if gcd(pivot, m) != 1:
            ideal = gcd(pivot, m)
            raise NotInvertibleError(
                f"circulant system is singular modulo {_smallest_prime_factor(ideal)} "
                f"(column {col} spans the ideal ({ideal}) in Z/{m}Z)",
                matrix=[row[:n] for row in matrix],
                column=col,
                ideal=ideal,
            )
        inv = pow(pivot, -1, m)
        A[col] = [(v * inv) % m for v in A[col]]
    sol = [0] * n
    for row in range(n - 1, -1, -1):
        acc = A[row][n] - sum(A[row][j] * sol[j] for j in range(row + 1, n))
        sol[row] = acc % m
    return sol


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def invert_unit(u: CyclicPoly) -> CyclicPoly:
    """Inverse of a unit of (Z/mZ)[t]/(t^n - 1), via the circulant system."""
    if u.m <= 0:
        raise LensStringError("unit inversion needs a positive coefficient modulus")
    rhs = [1] + [0] * (u.n - 1)
    if u.m == 1:
        return CyclicPoly.zero(u.n, 1)
    sol = solve_mod(circulant_matrix(u), rhs, u.m)
    return CyclicPoly(u.n, u.m, tuple(sol))


def is_unit(u: CyclicPoly) -> bool:
    try:
        invert_unit(u)
    except NotInvertibleError:
        return False
    return True


def dennis_dlog(u: CyclicPoly) -> OneForm:
    """Logarithmic derivative ``u^{-1} du`` of a unit."""
    return form_mul(invert_unit(u), de_rham(u))


def substitute(p: CyclicPoly, s: int) -> CyclicPoly:
    """Ring map t -> t^s."""
    return CyclicPoly.from_terms(p.n, p.m, {s * a: c for a, c in p.terms().items()})


def _check_multiplier(s: int, n: int) -> None:
    if gcd(s, n) != 1:
        raise InvalidMultiplierError(f"multiplier {s} is not a unit modulo {n}")


def substitute_pushforward(w: OneForm, s: int) -> OneForm:
    """Pushforward of 1-forms along t -> t^s: ``t^a dt/t -> s t^(sa) dt/t``."""
    _check_multiplier(s, w.n)
    return OneForm.from_terms(w.n, w.m, [(s * a, s * c) for a, c in w.terms().items()])
