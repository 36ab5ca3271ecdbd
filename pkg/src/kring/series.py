"""Truncated formal power series with exact coefficients.

A ``TruncatedSeries`` keeps coefficients for t^0 .. t^N and is closed under
addition, Cauchy products, exponential, logarithm, and the substitution
t -> t/(1-t).  Coefficients may be ``Fraction``s or any commutative-ring
values supporting addition, subtraction, equality, and scalar
multiplication by ``Fraction``; the ring product is pluggable so the same
engine serves both the ordinary and the convolution-style multiplications
of a model algebra.

The module also hosts the combinatorial tables the gamma calculus leans
on: Stirling numbers of both kinds and the scaled harmonic numbers
n! * (1 + 1/2 + ... + 1/n) = |s(n+1, 2)|.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Sequence

from .errors import DomainError, SeriesOrderError, StructureError


def _default_mul(a, b):
    return a * b


class TruncatedSeries:
    """Formal power series truncated at a fixed order N (inclusive)."""

    __slots__ = ("coeffs", "mul", "zero", "one")

    def __init__(
        self,
        coeffs: Sequence,
        *,
        mul: Callable | None = None,
        zero=Fraction(0),
        one=Fraction(1),
    ):
        self.coeffs = tuple(coeffs)
        if not self.coeffs:
            raise DomainError("a series needs at least its constant coefficient")
        self.mul = mul if mul is not None else _default_mul
        self.zero = zero
        self.one = one

    @classmethod
    def rational(cls, coeffs: Sequence, order: int | None = None) -> "TruncatedSeries":
        """Series over Q, zero-padded up to ``order`` when given."""
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            if len(cs) > order + 1:
                raise DomainError("more coefficients than the requested order allows")
            cs += [Fraction(0)] * (order + 1 - len(cs))
        return cls(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def like(self, coeffs: Sequence) -> "TruncatedSeries":
        return TruncatedSeries(coeffs, mul=self.mul, zero=self.zero, one=self.one)

    def constant(self, value) -> "TruncatedSeries":
        return self.like([value] + [self.zero] * self.order)

    def coefficient(self, i: int):
        if i < 0:
            raise DomainError("negative series index")
        if i > self.order:
            raise SeriesOrderError(
                f"coefficient t^{i} requested from a series of order {self.order}"
            )
        return self.coeffs[i]

    def is_zero(self) -> bool:
        return all(c == self.zero for c in self.coeffs)

    def _check_compatible(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise StructureError("series orders differ")

    def __eq__(self, other) -> bool:
        return isinstance(other, TruncatedSeries) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_compatible(other)
        return self.like([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_compatible(other)
        return self.like([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, q) -> "TruncatedSeries":
        q = Fraction(q)
        return self.like([q * c for c in self.coeffs])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_compatible(other)
        n = self.order
        out = [self.zero] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a == self.zero:
                continue
            for j in range(n - i + 1):
                b = other.coeffs[j]
                if b == self.zero:
                    continue
                out[i + j] = out[i + j] + self.mul(a, b)
        return self.like(out)

    def exp(self) -> "TruncatedSeries":
        """exp of a series with vanishing constant term."""
        if self.coeffs[0] != self.zero:
            raise DomainError("exp needs a zero constant term")
        result = self.constant(self.one)
        term = result
        for k in range(1, self.order + 1):
            term = (term * self).scale(Fraction(1, k))
            if term.is_zero():
                break
            result = result + term
        return result

    def log(self) -> "TruncatedSeries":
        """log of a series whose constant term is the unit."""
        if self.coeffs[0] != self.one:
            raise DomainError("log needs the unit as constant term")
        u = self - self.constant(self.one)
        result = self.constant(self.zero)
        power = None
        for k in range(1, self.order + 1):
            power = u if power is None else power * u
            if power.is_zero():
                break
            result = result + power.scale(Fraction((-1) ** (k - 1), k))
        return result

    def substitute_gamma(self) -> "TruncatedSeries":
        """Composition with t/(1-t): (t/(1-t))^i = sum_{m>=i} C(m-1, i-1) t^m."""
        out = [self.coeffs[0]]
        for m in range(1, self.order + 1):
            acc = self.zero
            for i in range(1, m + 1):
                c = self.coeffs[i]
                if c == self.zero:
                    continue
                acc = acc + comb(m - 1, i - 1) * c
            out.append(acc)
        return self.like(out)

    def __repr__(self) -> str:
        return f"TruncatedSeries({list(self.coeffs)!r})"


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    return s.exp()


def series_log(s: TruncatedSeries) -> TruncatedSeries:
    return s.log()


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def substitute_gamma(s: TruncatedSeries) -> TruncatedSeries:
    return s.substitute_gamma()


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k); S(n, k) = 0 for k > n."""
    if n < 0 or k < 0:
        raise DomainError("Stirling indices must be non-negative")
    if k > n:
        return 0
    if n == 0:
        return 1
    if k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def stirling1_unsigned(n: int, k: int) -> int:
    """Unsigned Stirling number of the first kind |s(n, k)|."""
    if n < 0 or k < 0:
        raise DomainError("Stirling indices must be non-negative")
    if k > n:
        return 0
    if n == 0:
        return 1
    if k == 0:
        return 0
    return (n - 1) * stirling1_unsigned(n - 1, k) + stirling1_unsigned(n - 1, k - 1)


def harmonic_firstkind(n: int) -> int:
    """n! * (1 + 1/2 + ... + 1/n), i.e. |s(n+1, 2)|."""
    if n < 0:
        raise DomainError("n must be non-negative")
    return stirling1_unsigned(n + 1, 2)


@dataclass(frozen=True)
class StirlingTable:
    """Both Stirling triangles up to a bound, as plain integer grids."""

    n_max: int
    second_kind: tuple[tuple[int, ...], ...]
    first_kind_unsigned: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, n_max: int) -> "StirlingTable":
        if n_max < 0:
            raise DomainError("n_max must be non-negative")
        second = tuple(
            tuple(stirling2(n, k) for k in range(n_max + 1)) for n in range(n_max + 1)
        )
        first = tuple(
            tuple(stirling1_unsigned(n, k) for k in range(n_max + 1))
            for n in range(n_max + 1)
        )
        return cls(n_max, second, first)

    def second(self, n: int, k: int) -> int:
        return self.second_kind[n][k]

    def first_unsigned(self, n: int, k: int) -> int:
        return self.first_kind_unsigned[n][k]
