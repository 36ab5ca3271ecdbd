"""Adams families, lambda/gamma operations, universal gamma coefficients,
Chern classes for the composed structure, and line-bundle calculus.

Five diagonal Adams families act on a model, with eigenvalue n^w on K^p_q:

    usual     w = p
    star      w = q            (ring maps for the convolution product)
    pi        w = g - q
    composed  w = p + q - g    (the derived index)
    pi_star   w = q - g        (rank-preserving rescaled star family)

All lambda and gamma operations are produced from the Adams action through
the exponential of the weighted power series and the substitution
t -> t/(1-t); no alternating-power semantics exists in the model.  For the
star family the products inside the exponential are convolution products,
for the others the ordinary one.

Gamma operations of an eigenvector are universal polynomials in its powers;
``universal_gamma_coefficients`` computes those coefficients once in the
scratch algebra Q[x]/(x^{m_max+1}) and ``gamma_images`` uses them (together
with the multiplicativity of the gamma series over sums) as a fast exact
route that the series-engine route must agree with.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import DomainError, SeriesOrderError
from .linalg import Subspace
from .model import Element, ModelAlgebra
from .operators import DiagonalOperator, star_product
from .series import TruncatedSeries, harmonic_firstkind

ADAMS_KINDS = ("usual", "star", "pi", "composed", "pi_star")


def adams_weight(kind: str, p: int, q: int, g: int) -> int:
    if kind == "usual":
        return p
    if kind == "star":
        return q
    if kind == "pi":
        return g - q
    if kind == "composed":
        return p + q - g
    if kind == "pi_star":
        return q - g
    raise DomainError(f"unknown Adams family {kind!r}")


@dataclass(frozen=True)
class AdamsFamily:
    """One of the five diagonal Adams families on a model."""

    kind: str
    model: ModelAlgebra

    def weight(self, i: int) -> int:
        p, q = self.model.bidegrees[i]
        return adams_weight(self.kind, p, q, self.model.g)

    def operator(self, n: int) -> DiagonalOperator:
        return adams_operator(self.model, self.kind, n)


@lru_cache(maxsize=None)
def adams_operator(model: ModelAlgebra, kind: str, n: int) -> DiagonalOperator:
    if n <= 0:
        raise DomainError("Adams operations are indexed by positive integers")
    g = model.g
    eig = tuple(
        Fraction(n) ** adams_weight(kind, p, q, g) for (p, q) in model.bidegrees
    )
    return DiagonalOperator(model, eig)


def adams(model: ModelAlgebra, kind: str, n: int, x: Element) -> Element:
    """Diagonal Adams action; a ring map for the family's product."""
    return adams_operator(model, kind, n).apply(x)


def kind_product(model: ModelAlgebra, kind: str):
    if kind == "star":
        return star_product
    return lambda a, b: a * b


def kind_unit(model: ModelAlgebra, kind: str) -> Element:
    return model.star_unit() if kind == "star" else model.one()


def kind_power(model: ModelAlgebra, kind: str, x: Element, m: int) -> Element:
    product = kind_product(model, kind)
    result = kind_unit(model, kind)
    for _ in range(m):
        result = product(result, x)
    return result


def gamma_series(
    model: ModelAlgebra, kind: str, x: Element, order: int
) -> TruncatedSeries:
    """The gamma series of x: exp of the substituted weighted Adams series.

    Substituting t/(1-t) into the logarithm first and exponentiating after
    is exact: the substitution is a ring map on truncated series.
    """
    if order < 1:
        raise DomainError("series order must be at least 1")
    zero = model.zero()
    log_coeffs = [zero]
    for n in range(1, order + 1):
        log_coeffs.append(
            Fraction((-1) ** (n - 1), n) * adams(model, kind, n, x)
        )
    log_lambda = TruncatedSeries(
        log_coeffs,
        mul=kind_product(model, kind),
        zero=zero,
        one=kind_unit(model, kind),
    )
    return log_lambda.substitute_gamma().exp()


def gamma_op(
    model: ModelAlgebra, kind: str, i: int, x: Element, order: int | None = None
) -> Element:
    """Coefficient of t^i in the gamma series of x."""
    if order is None:
        order = model.default_series_order
    if i > order:
        raise SeriesOrderError(
            f"gamma index {i} exceeds the series order {order}"
        )
    if i == 0:
        return kind_unit(model, kind)
    return gamma_series(model, kind, x, order).coefficient(i)


class _Poly:
    """Truncated polynomial in one nilpotent variable, Q[x]/(x^width)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(coeffs)

    def __add__(self, other):
        return _Poly(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __rmul__(self, q):
        q = Fraction(q)
        return _Poly(q * c for c in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, _Poly) and self.coeffs == other.coeffs

    __hash__ = None

    def mul(self, other):
        width = len(self.coeffs)
        out = [Fraction(0)] * width
        for i, ai in enumerate(self.coeffs):
            if not ai:
                continue
            for j, bj in enumerate(other.coeffs):
                if not bj or i + j >= width:
                    continue
                out[i + j] += ai * bj
        return _Poly(out)


@lru_cache(maxsize=None)
def universal_gamma_coefficients(
    d: int, order: int, m_max: int
) -> tuple[tuple[Fraction, ...], ...]:
    """Coefficients a(i; d, m) of x^m in the i-th gamma operation of an
    eigenvector x of weight d, computed in Q[x]/(x^{m_max+1}).

    Entry [i][m] is a(i; d, m) for 0 <= i <= order, 0 <= m <= m_max.
    """
    if order < 1 or m_max < 1:
        raise DomainError("order and m_max must be at least 1")
    # log-lambda in t has coefficient (-1)^{n-1} n^{d-1} x at t^n
    log_xcoeff = [Fraction(0)]
    for n in range(1, order + 1):
        c = Fraction((-1) ** (n - 1))
        c *= Fraction(n) ** (d - 1)
        log_xcoeff.append(c)
    # substitute t/(1-t) (linear on the logarithm)
    sub = [Fraction(0)]
    for m in range(1, order + 1):
        sub.append(
            sum(
                (comb(m - 1, n - 1) * log_xcoeff[n] for n in range(1, m + 1)),
                Fraction(0),
            )
        )
    width = m_max + 1
    zero_poly = _Poly([Fraction(0)] * width)
    one_poly = _Poly([Fraction(1)] + [Fraction(0)] * m_max)
    log_series = TruncatedSeries(
        [zero_poly]
        + [
            _Poly([Fraction(0), sub[n]] + [Fraction(0)] * (m_max - 1))
            for n in range(1, order + 1)
        ],
        mul=lambda a, b: a.mul(b),
        zero=zero_poly,
        one=one_poly,
    )
    expanded = log_series.exp()
    return tuple(expanded.coefficient(i).coeffs for i in range(order + 1))


def gamma_pi_coeff(i: int, d: int, m: int) -> Fraction:
    """The universal coefficient a(i; d, m) of the pi-structure expansion;
    d = g - q must be positive."""
    if d < 1:
        raise DomainError("the pi weight d must be at least 1")
    if i < 1 or m < 1:
        raise DomainError("i and m must be at least 1")
    table = universal_gamma_coefficients(d, max(i, 1), max(m, 1))
    return table[i][m]


@dataclass(frozen=True)
class GammaCoeffTable:
    """Exact table of a(i; d, m) over a rectangular range of indices."""

    i_max: int
    d_max: int
    m_max: int
    values: dict[tuple[int, int, int], Fraction]

    def value(self, i: int, d: int, m: int) -> Fraction:
        return self.values[(i, d, m)]


def gamma_coeff_table(i_max: int, d_max: int, m_max: int) -> GammaCoeffTable:
    values: dict[tuple[int, int, int], Fraction] = {}
    for d in range(1, d_max + 1):
        table = universal_gamma_coefficients(d, i_max, m_max)
        for i in range(1, i_max + 1):
            for m in range(1, m_max + 1):
                values[(i, d, m)] = table[i][m]
    return GammaCoeffTable(i_max, d_max, m_max, values)


def _weight_components(model: ModelAlgebra, kind: str, x: Element):
    by_weight: dict[int, list[Fraction]] = {}
    g = model.g
    for i, c in enumerate(x.coords):
        if not c:
            continue
        p, q = model.bidegrees[i]
        w = adams_weight(kind, p, q, g)
        coords = by_weight.setdefault(w, [Fraction(0)] * model.dim)
        coords[i] = c
    return {w: Element(model, coords) for w, coords in by_weight.items()}


def gamma_images(
    model: ModelAlgebra, kind: str, x: Element, order: int
) -> list[Element]:
    """All gamma operations gamma^0(x) .. gamma^order(x) at once.

    Fast exact route: decompose x into Adams-weight components, expand each
    component through the universal coefficient table and its powers, then
    multiply the component gamma series (the gamma series of a sum is the
    product of the gamma series).  Agrees with the series-engine route.
    """
    product = kind_product(model, kind)
    unit = kind_unit(model, kind)
    zero = model.zero()
    components = _weight_components(model, kind, x)
    result = TruncatedSeries(
        [unit] + [zero] * order, mul=product, zero=zero, one=unit
    )
    # a(i; d, m) vanishes for m > i, so powers beyond the order never enter;
    # components off the unit line die even earlier by nilpotency
    for w, comp in components.items():
        powers = []
        current = comp
        while not current.is_zero() and len(powers) < order:
            powers.append(current)
            current = product(current, comp)
        if not powers:
            continue
        table = universal_gamma_coefficients(w, order, len(powers))
        coeffs = [unit]
        for i in range(1, order + 1):
            acc = zero
            for m, xm in enumerate(powers, start=1):
                a = table[i][m]
                if a:
                    acc = acc + a * xm
            coeffs.append(acc)
        comp_series = TruncatedSeries(coeffs, mul=product, zero=zero, one=unit)
        result = result * comp_series
    return [result.coefficient(i) for i in range(order + 1)]


# -- line-bundle calculus ----------------------------------------------------


def log_class(L: Element) -> Element:
    """log of a unipotent class: sum (-1)^{n-1} (L-1)^n / n (a finite sum)."""
    model = L.model
    if L.coords[model.unit_index] != 1:
        raise DomainError("log needs a class of the form 1 + nilpotent")
    u = L - model.one()
    result = model.zero()
    power = model.one()
    for n in range(1, 2 * model.g + 2):
        power = power * u
        if power.is_zero():
            break
        result = result + Fraction((-1) ** (n - 1), n) * power
    else:
        if not power.is_zero():
            raise DomainError("argument is not unipotent")
    return result


def exp_class(x: Element) -> Element:
    """exp of a nilpotent class (zero coefficient on the unit line)."""
    model = x.model
    if x.coords[model.unit_index] != 0:
        raise DomainError("exp needs a nilpotent argument")
    result = model.one()
    term = model.one()
    for n in range(1, 2 * model.g + 2):
        term = Fraction(1, n) * (term * x)
        if term.is_zero():
            break
        result = result + term
    else:
        if not term.is_zero():
            raise DomainError("argument is not nilpotent")
    return result


def nth_root(L: Element, n: int) -> Element:
    """The class whose n-th power is L, for unipotent L."""
    if n < 1:
        raise DomainError("root index must be at least 1")
    return exp_class(Fraction(1, n) * log_class(L))


# -- Chern classes of the composed structure ---------------------------------


@dataclass(frozen=True)
class ChernClass:
    """Complete Chern data of the composed structure: the index-0 projection
    and the gamma components reduced modulo the next filtration stage."""

    augmentation: Element
    components: tuple[Element, ...]

    @property
    def is_zero(self) -> bool:
        return self.augmentation.is_zero() and all(
            c.is_zero() for c in self.components
        )


def chern_gamma(
    model: ModelAlgebra, i: int, x: Element, stages: list[Subspace]
) -> Element:
    """i-th Chern component: gamma^i of the augmentation-reduced part of x,
    represented canonically modulo stage i+1 of the composed filtration."""
    if i < 1:
        raise DomainError("Chern components are indexed from 1")
    if i + 1 >= len(stages):
        raise DomainError("need filtration stages up to i+1")
    reduced = x - x.beauville_component(0)
    value = gamma_op(model, "composed", i, reduced)
    return model.from_coords(stages[i + 1].reduce(value.coords))


def complete_chern(
    model: ModelAlgebra, x: Element, stages: list[Subspace]
) -> ChernClass:
    comps = tuple(
        chern_gamma(model, i, x, stages) for i in range(1, model.g + 1)
    )
    return ChernClass(x.beauville_component(0), comps)


# -- the index -1 series example ----------------------------------------------


@dataclass(frozen=True)
class SeriesNormalizationReport:
    """Exact expansion of the composed-structure gamma series of a square-zero
    class of a given derived index, under both candidate logarithm scalings.

    ``log_gamma`` holds, per normalization, the rational coefficient of x at
    t^n in log Gamma_t(x) for n = 1..order; ``numerators`` scales those by
    n! so they can be compared against the scaled harmonic numbers."""

    weight: int
    order: int
    log_gamma: dict[str, tuple[Fraction, ...]]
    numerators: dict[str, tuple[Fraction, ...]]
    targets: tuple[int, ...]
    matches: dict[str, bool]

    @property
    def matching_normalizations(self) -> tuple[str, ...]:
        return tuple(k for k, v in self.matches.items() if v)


def gamma_normalization_report(
    weight: int = -1, order: int = 5
) -> SeriesNormalizationReport:
    """Expand Gamma_t(x) for a square-zero eigenvector x of the composed
    structure with the given derived index, under the standard logarithm
    (coefficient (-1)^{n-1} n^{weight-1}) and the unscaled variant
    (coefficient (-1)^{n-1} n^{weight}), and compare the n!-scaled
    coefficients against the scaled harmonic numbers."""
    if order < 1:
        raise DomainError("order must be at least 1")
    results_log: dict[str, tuple[Fraction, ...]] = {}
    results_num: dict[str, tuple[Fraction, ...]] = {}
    matches: dict[str, bool] = {}
    targets = tuple(harmonic_firstkind(n) for n in range(1, order + 1))
    for name, shift in (("standard", -1), ("unscaled", 0)):
        log_coeffs = [
            Fraction((-1) ** (n - 1)) * Fraction(n) ** (weight + shift)
            for n in range(1, order + 1)
        ]
        # substitute t/(1-t); x^2 = 0 makes the logarithm exact as stated
        substituted = tuple(
            sum(
                (comb(m - 1, n - 1) * log_coeffs[n - 1] for n in range(1, m + 1)),
                Fraction(0),
            )
            for m in range(1, order + 1)
        )
        numerators = tuple(
            c * factorial(m) for m, c in enumerate(substituted, start=1)
        )
        results_log[name] = substituted
        results_num[name] = numerators
        matches[name] = all(a == b for a, b in zip(numerators, targets))
    return SeriesNormalizationReport(
        weight, order, results_log, results_num, targets, matches
    )
