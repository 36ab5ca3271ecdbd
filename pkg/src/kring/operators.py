"""Operator calculus on a bigraded model.

Covers the multiplication-by-k pullback and pushforward families (diagonal
on the bigraded basis, with exponents g+p-q and g-p+q on K^p_q), the
Fourier operator and its inverse, the convolution product the Fourier
operator transports from the ordinary one, the two augmentation
functionals, and the universal relations of the pushforward family:

* the alternating-binomial expansion of the identity in terms of the
  pushforwards by 0, -1, ..., -2g, and
* the exact resolution of any (k)-pushforward as a combination of the
  pushforwards by 0 .. 2g, via the invertible power matrix (m^k).

Operators are materialised once per model and cached; the caches are
read-only after construction, so concurrent readers are safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import DomainError
from .linalg import Matrix, vandermonde_matrix
from .model import Element, ModelAlgebra


@dataclass(frozen=True)
class DiagonalOperator:
    """A model operator acting diagonally on the bigraded basis."""

    model: ModelAlgebra
    eigenvalues: tuple[Fraction, ...]

    def __call__(self, x: Element) -> Element:
        return self.apply(x)

    def apply(self, x: Element) -> Element:
        return Element(
            self.model, [lam * c for lam, c in zip(self.eigenvalues, x.coords)]
        )

    def matrix(self) -> Matrix:
        n = self.model.dim
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i, lam in enumerate(self.eigenvalues):
            rows[i][i] = lam
        return Matrix(rows)

    def compose(self, other: "DiagonalOperator") -> "DiagonalOperator":
        return DiagonalOperator(
            self.model,
            tuple(a * b for a, b in zip(self.eigenvalues, other.eigenvalues)),
        )


@lru_cache(maxsize=None)
def pullback(model: ModelAlgebra, k: int) -> DiagonalOperator:
    """Pullback along multiplication by k: eigenvalue k^{g+p-q} on K^p_q.

    With the 0^0 = 1 convention, pullback(0) is the projector onto the unit
    line scaled by rank: x |-> rank(x) * 1.
    """
    g = model.g
    eig = tuple(Fraction(k) ** (g + p - q) for (p, q) in model.bidegrees)
    return DiagonalOperator(model, eig)


@lru_cache(maxsize=None)
def pushforward(model: ModelAlgebra, k: int) -> DiagonalOperator:
    """Pushforward along multiplication by k: eigenvalue k^{g-p+q} on K^p_q.

    pushforward(0) is x |-> euler_char(x) * origin class; for k != 0 the
    operator is invertible.
    """
    g = model.g
    eig = tuple(Fraction(k) ** (g - p + q) for (p, q) in model.bidegrees)
    return DiagonalOperator(model, eig)


def fourier(x: Element) -> Element:
    """Apply the model's Fourier operator (row i = image of basis vector i)."""
    return Element(x.model, x.model.fm.vec_mul(x.coords))


def fourier_inverse(x: Element) -> Element:
    return Element(x.model, x.model.fm_inverse.vec_mul(x.coords))


def star_product(x: Element, y: Element) -> Element:
    """Convolution product: the ordinary product conjugated by Fourier."""
    if x.model is not y.model:
        raise DomainError("star product needs elements of one model")
    return fourier_inverse(fourier(x) * fourier(y))


def star_power(x: Element, n: int) -> Element:
    if n < 0:
        raise DomainError("star powers take non-negative exponents")
    result = x.model.star_unit()
    for _ in range(n):
        result = star_product(result, x)
    return result


def rank(x: Element) -> Fraction:
    """Coefficient on the unit line K^0_g; multiplicative for the ordinary product."""
    return x.coords[x.model.unit_index]


def euler_char(x: Element) -> Fraction:
    """Coefficient on the origin line K^g_0; multiplicative for the convolution."""
    return x.coords[x.model.star_unit_index]


@dataclass(frozen=True)
class CompositeCheckResult:
    ok: bool
    m: int
    n: int
    witness: str | None = None


def fm_composite_check(model: ModelAlgebra, m: int, n: int) -> CompositeCheckResult:
    """Check pullback(m) . F . F . pushforward(n) = (-1)^g pullback(-m) . pushforward(n).

    The left side is the composite of the twisted Fourier transforms
    attached to the n-th and m-th powers of the kernel class; the check is
    exact on every basis vector and reports the first failure.
    """
    g = model.g
    sign = Fraction((-1) ** g)
    pull_m = pullback(model, m)
    push_n = pushforward(model, n)
    pull_neg_m = pullback(model, -m)
    for i in range(model.dim):
        e = model.basis_element(i)
        lhs = pull_m.apply(fourier(fourier(push_n.apply(e))))
        rhs = sign * pull_neg_m.apply(push_n.apply(e))
        if lhs != rhs:
            return CompositeCheckResult(False, m, n, witness=model.labels[i])
    return CompositeCheckResult(True, m, n)


def identity_expansion_coefficients(g: int) -> tuple[int, ...]:
    """Coefficients (-1)^m C(2g+1, m+1) of the pushforwards by -m, m = 0..2g,
    in the expansion of the identity."""
    if g < 1:
        raise DomainError("g must be at least 1")
    return tuple((-1) ** m * comb(2 * g + 1, m + 1) for m in range(2 * g + 1))


def pushforward_identity_check(g: int, model: ModelAlgebra | None = None) -> bool:
    """Verify sum_m (-1)^m C(2g+1, m+1) (-m)^d = 1 for every d in 0..2g,
    and, when a model is supplied, the same combination of pushforward
    operators equals the identity exactly."""
    coeffs = identity_expansion_coefficients(g)
    for d in range(2 * g + 1):
        total = sum(c * Fraction(-m) ** d for m, c in enumerate(coeffs))
        if total != 1:
            return False
    if model is not None:
        if model.g != g:
            raise DomainError("model dimension does not match g")
        for i in range(model.dim):
            e = model.basis_element(i)
            acc = model.zero()
            for m, c in enumerate(coeffs):
                acc = acc + c * pushforward(model, -m).apply(e)
            if acc != e:
                return False
    return True


@dataclass(frozen=True)
class PushforwardRelation:
    """(k)-pushforward written in the basis of pushforwards by 0 .. 2g."""

    k: int
    g: int
    coefficients: tuple[Fraction, ...]

    @property
    def integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)


def pushforward_relation(k: int, g: int) -> PushforwardRelation:
    """Solve the (2g+1)-node power system sum_m c_m m^d = k^d exactly.

    The system matrix is the invertible (m^d) matrix, so the coefficients
    are unique; whether they are integers is reported, not assumed.
    """
    if g < 1:
        raise DomainError("g must be at least 1")
    size = 2 * g + 1
    # equations indexed by d: rows of the transposed power matrix
    system = vandermonde_matrix(g).transpose()
    rhs = [Fraction(k) ** d for d in range(size)]
    sol = system.solve(rhs)
    return PushforwardRelation(k, g, tuple(sol))
