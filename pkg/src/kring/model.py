"""Finite-dimensional bigraded models of a rational Grothendieck ring.

A model is a commutative, associative Q-algebra with a distinguished basis,
each basis vector carrying a bidegree (p, q), 0 <= p, q <= g.  The product
obeys the bidegree law

    K^a_b . K^c_d  is contained in  K^{a+c}_{b+d-g},

and is forced to vanish when a+c > g or b+d-g < 0.  The unit spans the line
K^0_g, a second distinguished class (the origin class, unit of the
convolution product) spans K^g_0, and an invertible Fourier operator
exchanges the two gradings and squares to (-1)^g times the inversion
pullback (the diagonal operator with eigenvalue (-1)^{g+p-q} on K^p_q).
The derived index j = p + q - g ranges over -g .. g and is additive under
multiplication.

``validate`` machine-checks every one of these constraints and reports a
witness for each violation; the bundled builders construct admissible
models and re-verify themselves instead of trusting their own formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import DomainError, StructureError
from .linalg import Matrix

MulTable = Mapping[tuple[int, int], Mapping[int, Fraction]]


class Bidegree(NamedTuple):
    p: int
    q: int

    def beauville_index(self, g: int) -> int:
        return self.p + self.q - g


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    witness: tuple = ()


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> tuple[str, ...]:
        return tuple(v.code for v in self.violations)

    def __str__(self) -> str:
        if self.ok:
            return "admissible"
        lines = [f"{v.code}: {v.message}" for v in self.violations]
        return "\n".join(lines)


class Element:
    """An exact rational coordinate vector over a model's basis."""

    __slots__ = ("model", "coords")

    def __init__(self, model: "ModelAlgebra", coords: Sequence):
        cs = tuple(Fraction(c) for c in coords)
        if len(cs) != model.dim:
            raise StructureError("coordinate length does not match the model")
        self.model = model
        self.coords = cs

    def _check_model(self, other: "Element") -> None:
        if self.model is not other.model:
            raise StructureError("elements belong to different models")

    def __add__(self, other: "Element") -> "Element":
        self._check_model(other)
        return Element(self.model, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "Element") -> "Element":
        self._check_model(other)
        return Element(self.model, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "Element":
        return Element(self.model, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check_model(other)
            return Element(self.model, self.model.multiply(self.coords, other.coords))
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Element(self.model, [q * a for a in self.coords])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, n: int) -> "Element":
        if not isinstance(n, int) or n < 0:
            raise DomainError("powers take non-negative integer exponents")
        result = self.model.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Element)
            and self.model is other.model
            and self.coords == other.coords
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.coords)

    def coefficient(self, i: int) -> Fraction:
        return self.coords[i]

    def component(self, p: int, q: int) -> "Element":
        """Projection onto the K^p_q coordinate block."""
        keep = self.model.indices_by_bidegree(p, q)
        return self.model.project(self, keep)

    def beauville_component(self, j: int) -> "Element":
        keep = self.model.indices_by_index(j)
        return self.model.project(self, keep)

    def __repr__(self) -> str:
        return f"Element({self})"

    def __str__(self) -> str:
        parts = []
        for c, label in zip(self.coords, self.model.labels):
            if not c:
                continue
            if c == 1:
                term = label
            elif c == -1:
                term = f"-{label}"
            else:
                term = f"{c}*{label}"
            parts.append(term)
        if not parts:
            return "0"
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out


class ModelAlgebra:
    """A validated-on-demand bigraded algebra with a Fourier operator.

    Instances are immutable after construction; ``validate`` never mutates.
    The multiplication table is stored sparsely: ``mul[(i, j)]`` maps basis
    index k to the coefficient of basis vector k in e_i . e_j, and absent
    pairs multiply to zero.
    """

    def __init__(
        self,
        g: int,
        basis: Sequence[tuple[str, tuple[int, int]]],
        mul: MulTable,
        fm: Matrix | Sequence[Sequence],
        unit_index: int,
        star_unit_index: int,
    ):
        self.g = int(g)
        self.labels = tuple(label for label, _ in basis)
        self.bidegrees = tuple(Bidegree(int(p), int(q)) for _, (p, q) in basis)
        self.dim = len(self.labels)
        if len(set(self.labels)) != self.dim:
            raise StructureError("basis labels must be unique")
        self.unit_index = int(unit_index)
        self.star_unit_index = int(star_unit_index)
        if not (0 <= self.unit_index < self.dim and 0 <= self.star_unit_index < self.dim):
            raise StructureError("unit indices out of range")
        table: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]] = {}
        for (i, j), entries in mul.items():
            cleaned = tuple(
                (int(k), Fraction(c)) for k, c in sorted(entries.items()) if Fraction(c)
            )
            if cleaned:
                table[(int(i), int(j))] = cleaned
        self._mul = table
        self.fm = fm if isinstance(fm, Matrix) else Matrix(fm)
        if self.fm.nrows != self.dim or self.fm.ncols != self.dim:
            raise StructureError("Fourier matrix must be square of the basis size")
        self._index_of = {label: i for i, label in enumerate(self.labels)}

    # -- basic accessors -------------------------------------------------

    @property
    def default_series_order(self) -> int:
        return self.g * self.g + 2

    def index_of(self, label: str) -> int:
        try:
            return self._index_of[label]
        except KeyError:
            raise DomainError(f"no basis vector labelled {label!r}") from None

    def bidegree_of(self, i: int) -> Bidegree:
        return self.bidegrees[i]

    def beauville_index_of(self, i: int) -> int:
        return self.bidegrees[i].beauville_index(self.g)

    def indices_by_bidegree(self, p: int, q: int) -> tuple[int, ...]:
        return tuple(
            i for i, bd in enumerate(self.bidegrees) if bd.p == p and bd.q == q
        )

    def indices_by_index(self, j: int) -> tuple[int, ...]:
        return tuple(
            i for i in range(self.dim) if self.beauville_index_of(i) == j
        )

    # -- element factories ------------------------------------------------

    def zero(self) -> Element:
        return Element(self, [Fraction(0)] * self.dim)

    def basis_element(self, i: int) -> Element:
        coords = [Fraction(0)] * self.dim
        coords[i] = Fraction(1)
        return Element(self, coords)

    def one(self) -> Element:
        return self.basis_element(self.unit_index)

    def star_unit(self) -> Element:
        return self.basis_element(self.star_unit_index)

    def element(self, coefficients: Mapping[str, object]) -> Element:
        coords = [Fraction(0)] * self.dim
        for label, c in coefficients.items():
            coords[self.index_of(label)] = Fraction(c)
        return Element(self, coords)

    def from_coords(self, coords: Sequence) -> Element:
        return Element(self, coords)

    def basis_elements(self) -> tuple[Element, ...]:
        return tuple(self.basis_element(i) for i in range(self.dim))

    def project(self, x: Element, keep: Iterable[int]) -> Element:
        keep = set(keep)
        return Element(
            self, [c if i in keep else Fraction(0) for i, c in enumerate(x.coords)]
        )

    # -- products ----------------------------------------------------------

    def mul_basis(self, i: int, j: int) -> tuple[tuple[int, Fraction], ...]:
        return self._mul.get((i, j), ())

    def multiply(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                entries = self._mul.get((i, j))
                if not entries:
                    continue
                f = xi * yj
                for k, c in entries:
                    out[k] += f * c
        return tuple(out)

    @cached_property
    def fm_inverse(self) -> Matrix:
        return self.fm.inverse()

    def __repr__(self) -> str:
        return f"ModelAlgebra(g={self.g}, dim={self.dim})"


def _inversion_sign(model: ModelAlgebra, i: int) -> int:
    p, q = model.bidegrees[i]
    return (-1) ** (model.g + p - q)


def validate(model: ModelAlgebra) -> ValidationReport:
    """Machine-check every model invariant; empty report iff admissible."""
    g = model.g
    violations: list[Violation] = []

    def flag(code: str, message: str, witness: tuple = ()):
        violations.append(Violation(code, message, witness))

    for i, bd in enumerate(model.bidegrees):
        if not (0 <= bd.p <= g and 0 <= bd.q <= g):
            flag(
                "bidegree-range",
                f"basis vector {model.labels[i]} has bidegree {tuple(bd)} outside 0..{g}",
                (model.labels[i],),
            )
    if violations:
        return ValidationReport(tuple(violations))

    unit_bd = model.bidegrees[model.unit_index]
    if unit_bd != (0, g):
        flag("unit-bidegree", f"unit must lie in K^0_{g}, found {tuple(unit_bd)}")
    star_bd = model.bidegrees[model.star_unit_index]
    if star_bd != (g, 0):
        flag(
            "origin-bidegree",
            f"origin class must lie in K^{g}_0, found {tuple(star_bd)}",
        )
    unit_line = model.indices_by_bidegree(0, g)
    if len(unit_line) != 1:
        flag(
            "unit-line",
            "the K^0_g block must be the one-dimensional line of the unit",
            tuple(model.labels[i] for i in unit_line),
        )
    origin_line = model.indices_by_bidegree(g, 0)
    if len(origin_line) != 1:
        flag(
            "origin-line",
            "the K^g_0 block must be the one-dimensional line of the origin class",
            tuple(model.labels[i] for i in origin_line),
        )

    u = model.unit_index
    for i in range(model.dim):
        got = model.multiply(model.basis_element(u).coords, model.basis_element(i).coords)
        want = model.basis_element(i).coords
        if got != want:
            flag(
                "unit-product",
                f"1 * {model.labels[i]} != {model.labels[i]}",
                (model.labels[i],),
            )

    for i in range(model.dim):
        for j in range(i + 1, model.dim):
            if model.mul_basis(i, j) != model.mul_basis(j, i):
                flag(
                    "mul-commutativity",
                    f"{model.labels[i]} * {model.labels[j]} differs from the reversed product",
                    (model.labels[i], model.labels[j]),
                )

    for (i, j), entries in model._mul.items():
        a, b = model.bidegrees[i]
        c, d = model.bidegrees[j]
        tp, tq = a + c, b + d - g
        allowed = tp <= g and tq >= 0
        for k, _ in entries:
            if not allowed:
                flag(
                    "bidegree-law",
                    f"{model.labels[i]} * {model.labels[j]} must vanish "
                    f"(target bidegree ({tp},{tq}) is out of range)",
                    (model.labels[i], model.labels[j], model.labels[k]),
                )
            elif model.bidegrees[k] != (tp, tq):
                flag(
                    "bidegree-law",
                    f"{model.labels[i]} * {model.labels[j]} hits {model.labels[k]} "
                    f"outside K^{tp}_{tq}",
                    (model.labels[i], model.labels[j], model.labels[k]),
                )

    basis = model.basis_elements()
    for i in range(model.dim):
        for j in range(i, model.dim):
            ij = basis[i] * basis[j]
            for k in range(j, model.dim):
                left = ij * basis[k]
                right = basis[i] * (basis[j] * basis[k])
                if left != right:
                    flag(
                        "mul-associativity",
                        f"({model.labels[i]} * {model.labels[j]}) * {model.labels[k]} "
                        f"!= {model.labels[i]} * ({model.labels[j]} * {model.labels[k]})",
                        (model.labels[i], model.labels[j], model.labels[k]),
                    )

    if model.fm.rank() != model.dim:
        flag("fm-invertible", "the Fourier matrix is singular")

    for i in range(model.dim):
        p, q = model.bidegrees[i]
        for k, c in enumerate(model.fm.rows[i]):
            if c and model.bidegrees[k] != (q, p):
                flag(
                    "fm-bidegree",
                    f"the Fourier image of {model.labels[i]} leaks outside K^{q}_{p}",
                    (model.labels[i],),
                )
                break

    square = model.fm * model.fm
    for i in range(model.dim):
        want = [Fraction(0)] * model.dim
        want[i] = Fraction((-1) ** g * _inversion_sign(model, i))
        if list(square.rows[i]) != want:
            flag(
                "fm-involution",
                f"the Fourier square does not act as (-1)^{g} times the inversion "
                f"pullback on {model.labels[i]}",
                (model.labels[i],),
            )

    origin_image = model.fm.rows[model.star_unit_index]
    want = model.one().coords
    if origin_image != want:
        flag(
            "fm-origin",
            "the Fourier image of the origin class must be the unit "
            "(this pins the Euler functional to rank after Fourier)",
            (model.labels[model.star_unit_index],),
        )

    return ValidationReport(tuple(violations))


def _self_check(model: ModelAlgebra, name: str) -> ModelAlgebra:
    report = validate(model)
    if not report.ok:
        raise StructureError(f"{name} builder produced an inadmissible model:\n{report}")
    return model


def theta_model(g: int) -> ModelAlgebra:
    """Divided-power model generated by a symmetric line-bundle class.

    Basis e_0 .. e_g with e_p in K^p_{g-p}; e_p stands for the p-th divided
    power of the degree-one class, so e_a . e_b = C(a+b, a) e_{a+b}.  The
    Fourier operator sends e_p to (-1)^{g-p} e_{g-p}; the signs are forced
    by the Fourier square law together with the origin-to-unit constraint,
    and the builder re-verifies them via ``validate``.
    """
    if g < 1:
        raise DomainError("g must be at least 1")
    basis = [(f"e{p}", (p, g - p)) for p in range(g + 1)]
    mul: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a in range(g + 1):
        for b in range(g + 1):
            if a + b <= g:
                mul[(a, b)] = {a + b: Fraction(comb(a + b, a))}
    fm_rows = [[Fraction(0)] * (g + 1) for _ in range(g + 1)]
    for p in range(g + 1):
        fm_rows[p][g - p] = Fraction((-1) ** (g - p))
    model = ModelAlgebra(g, basis, mul, fm_rows, unit_index=0, star_unit_index=g)
    return _self_check(model, "theta")


def antisym_model(g: int) -> ModelAlgebra:
    """Theta model extended by an anti-symmetric line-bundle direction.

    Adds a in K^1_g with a*a = 0 and the translates a_p = a . e_p in
    K^{p+1}_{g-p} for p <= g-1.  The Fourier operator maps a_p to
    (-1)^{g-p} a_{g-1-p} (with a_0 = a), the smallest consistent extension
    of the theta signs.
    """
    if g < 2:
        raise DomainError("g must be at least 2")
    basis = [(f"e{p}", (p, g - p)) for p in range(g + 1)]
    a_index = {p: g + 1 + p for p in range(g)}
    basis.append(("a", (1, g)))
    for p in range(1, g):
        basis.append((f"a{p}", (p + 1, g - p)))
    dim = len(basis)
    mul: dict[tuple[int, int], dict[int, Fraction]] = {}
    for x in range(g + 1):
        for y in range(g + 1):
            if x + y <= g:
                mul[(x, y)] = {x + y: Fraction(comb(x + y, x))}
    for p in range(g):
        for r in range(g + 1):
            if p + r <= g - 1:
                entry = {a_index[p + r]: Fraction(comb(p + r, p))}
                mul[(a_index[p], r)] = dict(entry)
                mul[(r, a_index[p])] = dict(entry)
    fm_rows = [[Fraction(0)] * dim for _ in range(dim)]
    for p in range(g + 1):
        fm_rows[p][g - p] = Fraction((-1) ** (g - p))
    for p in range(g):
        fm_rows[a_index[p]][a_index[g - 1 - p]] = Fraction((-1) ** (g - p))
    model = ModelAlgebra(g, basis, mul, fm_rows, unit_index=0, star_unit_index=g)
    return _self_check(model, "antisym")


def pathological_model(g: int) -> ModelAlgebra:
    """Theta model plus a Fourier-paired couple of negative-index classes.

    v sits in K^1_{g-2} and w in K^{g-2}_1 (both of derived index -1); they
    annihilate every non-unit basis vector.  fm(v) = w, and the sign of
    fm(w) is the one the Fourier square law forces.  The model passes
    ``validate`` and serves as a negative control for the conjecture
    checkers: no admissibility constraint rules such classes out.
    """
    if g < 2:
        raise DomainError("g must be at least 2")
    basis = [(f"e{p}", (p, g - p)) for p in range(g + 1)]
    v_idx, w_idx = g + 1, g + 2
    basis.append(("v", (1, g - 2)))
    basis.append(("w", (g - 2, 1)))
    dim = len(basis)
    mul: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a in range(g + 1):
        for b in range(g + 1):
            if a + b <= g:
                mul[(a, b)] = {a + b: Fraction(comb(a + b, a))}
    for idx in (v_idx, w_idx):
        mul[(0, idx)] = {idx: Fraction(1)}
        mul[(idx, 0)] = {idx: Fraction(1)}
    fm_rows = [[Fraction(0)] * dim for _ in range(dim)]
    for p in range(g + 1):
        fm_rows[p][g - p] = Fraction((-1) ** (g - p))
    fm_rows[v_idx][w_idx] = Fraction(1)
    fm_rows[w_idx][v_idx] = Fraction((-1) ** (g + 1))
    model = ModelAlgebra(g, basis, mul, fm_rows, unit_index=0, star_unit_index=g)
    return _self_check(model, "pathological")


def violator_model(g: int) -> ModelAlgebra:
    """Pathological model plus the anti-symmetric direction and one seeded
    defect: a . v is a nonzero class of bidegree (2, g-2).

    The product is legal for the bidegree law (indices 1 and -1 meet in
    index 0), so the model still validates; only the index-product checker
    trips on it.  For g = 2 the target is the origin class e_2 (the only
    basis vector of bidegree (2, 0)); for g >= 3 a fresh annihilating pair
    z, zdual carries the product so associativity survives.
    """
    if g < 2:
        raise DomainError("g must be at least 2")
    basis = [(f"e{p}", (p, g - p)) for p in range(g + 1)]
    a_index = {p: g + 1 + p for p in range(g)}
    basis.append(("a", (1, g)))
    for p in range(1, g):
        basis.append((f"a{p}", (p + 1, g - p)))
    v_idx = len(basis)
    basis.append(("v", (1, g - 2)))
    w_idx = len(basis)
    basis.append(("w", (g - 2, 1)))
    if g == 2:
        target_idx = 2  # e_2, the unique class of bidegree (2, 0)
        z_idx = zdual_idx = None
    else:
        z_idx = len(basis)
        basis.append(("z", (2, g - 2)))
        zdual_idx = len(basis)
        basis.append(("zdual", (g - 2, 2)))
        target_idx = z_idx
    dim = len(basis)

    mul: dict[tuple[int, int], dict[int, Fraction]] = {}
    for x in range(g + 1):
        for y in range(g + 1):
            if x + y <= g:
                mul[(x, y)] = {x + y: Fraction(comb(x + y, x))}
    for p in range(g):
        for r in range(g + 1):
            if p + r <= g - 1:
                entry = {a_index[p + r]: Fraction(comb(p + r, p))}
                mul[(a_index[p], r)] = dict(entry)
                mul[(r, a_index[p])] = dict(entry)
    extras = [v_idx, w_idx] + ([z_idx, zdual_idx] if z_idx is not None else [])
    for idx in extras:
        mul[(0, idx)] = {idx: Fraction(1)}
        mul[(idx, 0)] = {idx: Fraction(1)}
    # the seeded defect: an index-1 class meets an index-(-1) class
    mul[(a_index[0], v_idx)] = {target_idx: Fraction(1)}
    mul[(v_idx, a_index[0])] = {target_idx: Fraction(1)}

    fm_rows = [[Fraction(0)] * dim for _ in range(dim)]
    for p in range(g + 1):
        fm_rows[p][g - p] = Fraction((-1) ** (g - p))
    for p in range(g):
        fm_rows[a_index[p]][a_index[g - 1 - p]] = Fraction((-1) ** (g - p))
    fm_rows[v_idx][w_idx] = Fraction(1)
    fm_rows[w_idx][v_idx] = Fraction((-1) ** (g + 1))
    if z_idx is not None:
        fm_rows[z_idx][zdual_idx] = Fraction(1)
        fm_rows[zdual_idx][z_idx] = Fraction((-1) ** g)
    model = ModelAlgebra(g, basis, mul, fm_rows, unit_index=0, star_unit_index=g)
    return _self_check(model, "violator")
