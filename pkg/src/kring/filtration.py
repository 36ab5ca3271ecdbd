"""Gamma-type filtrations of a model and the conjecture/theorem checkers.

Four decreasing filtrations are computed as exact subspaces, one per
structure:

    gamma  ordinary product, augmentation = rank onto the unit line
    star   convolution product, augmentation = Euler functional onto the
           origin line
    pi     ordinary product, augmentation = projection onto the q = g block
    Gamma  ordinary product, augmentation = projection onto the index-0
           block (the composed structure)

Stage 1 of each filtration is the augmentation kernel; stage n >= 2 is the
span, over the augmentation subring, of all products of gamma operations of
kernel elements with total weight at least n.  The saturation method builds
that span from an enriched generator set (kernel basis, pairwise sums, and
seeded random rational combinations), iterating until two consecutive
rounds leave every stage dimension unchanged.  The eigen_sum method sums
the Adams eigenspaces of weight >= n, stage by stage.

The checkers cover the inclusion of the pi filtration in the gamma one
(with the unconditionally provable cases flagged separately), the
four-way equivalence criterion for homogeneous classes, and the composed
structure: the index-product vanishing, the augmentation morphism (skipped
with a note where the index-product hypothesis fails), the stage bounds of
index blocks, the two computations of the complete-Chern-class kernel, and
the top-stage vanishing statements.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .adams import (
    adams,
    adams_weight,
    complete_chern,
    gamma_images,
    kind_product,
    kind_unit,
)
from .errors import ConvergenceError, DomainError, SeriesOrderError
from .linalg import Subspace
from .model import Element, ModelAlgebra
from .operators import euler_char, rank
from .series import TruncatedSeries

FILTRATION_KINDS = ("gamma", "star", "pi", "Gamma")

_FAMILY = {"gamma": "usual", "star": "star", "pi": "pi", "Gamma": "composed"}


@dataclass(frozen=True)
class FiltrationSpec:
    """One of the four filtration structures on a model."""

    kind: str

    def __post_init__(self):
        if self.kind not in FILTRATION_KINDS:
            raise DomainError(f"unknown filtration kind {self.kind!r}")

    @property
    def family(self) -> str:
        return _FAMILY[self.kind]

    def weight(self, model: ModelAlgebra, i: int) -> int:
        p, q = model.bidegrees[i]
        return adams_weight(self.family, p, q, model.g)

    def kernel_indices(self, model: ModelAlgebra) -> tuple[int, ...]:
        if self.kind == "gamma":
            return tuple(i for i in range(model.dim) if i != model.unit_index)
        if self.kind == "star":
            return tuple(i for i in range(model.dim) if i != model.star_unit_index)
        if self.kind == "pi":
            return tuple(
                i for i in range(model.dim) if model.bidegrees[i].q != model.g
            )
        return tuple(
            i for i in range(model.dim) if model.beauville_index_of(i) != 0
        )

    def subring_indices(self, model: ModelAlgebra) -> tuple[int, ...]:
        if self.kind == "gamma":
            return (model.unit_index,)
        if self.kind == "star":
            return (model.star_unit_index,)
        if self.kind == "pi":
            return tuple(
                i for i in range(model.dim) if model.bidegrees[i].q == model.g
            )
        return tuple(
            i for i in range(model.dim) if model.beauville_index_of(i) == 0
        )

    def augmentation(self, model: ModelAlgebra, x: Element) -> Element:
        if self.kind == "gamma":
            return rank(x) * model.one()
        if self.kind == "star":
            return euler_char(x) * model.star_unit()
        return model.project(x, self.subring_indices(model))

    def augmentation_is_morphism(self, model: ModelAlgebra) -> tuple[bool, str | None]:
        """Whether the augmentation respects the kind's product on the basis;
        returns a witness pair when it does not."""
        product = kind_product(model, self.kind)
        for i in range(model.dim):
            for j in range(i, model.dim):
                x, y = model.basis_element(i), model.basis_element(j)
                lhs = self.augmentation(model, product(x, y))
                rhs = product(
                    self.augmentation(model, x), self.augmentation(model, y)
                )
                if lhs != rhs:
                    return False, f"({model.labels[i]}, {model.labels[j]})"
        return True, None


@dataclass(frozen=True)
class FiltrationResult:
    kind: str
    method: str
    stages: tuple[Subspace, ...]
    rounds: tuple[tuple[int, ...], ...]
    axiom_ok: bool
    axiom_witness: str | None
    order: int
    seed: int

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.stages)

    def stage(self, n: int) -> Subspace:
        return self.stages[n]


def _random_combination(
    model: ModelAlgebra, rng: random.Random, kernel_basis: Sequence[Element]
) -> Element:
    out = model.zero()
    for b in kernel_basis:
        num = rng.randint(-6, 6)
        den = rng.randint(1, 3)
        if num:
            out = out + Fraction(num, den) * b
    return out


def _close_under_products(
    model: ModelAlgebra,
    product: Callable[[Element, Element], Element],
    seed_vectors: list[Element],
    multipliers: list[Element],
) -> Subspace:
    """Span of all words in ``multipliers`` applied to ``seed_vectors``."""
    space = Subspace.span(model.dim, [v.coords for v in seed_vectors])
    while True:
        new_vectors = []
        basis_elems = [model.from_coords(r) for r in space.basis_vectors()]
        for m in multipliers:
            for b in basis_elems:
                prod = product(m, b)
                if not prod.is_zero() and not space.contains(prod.coords):
                    new_vectors.append(prod)
        if not new_vectors:
            return space
        space = space + Subspace.span(model.dim, [v.coords for v in new_vectors])


def _saturation_stages(
    model: ModelAlgebra,
    spec: FiltrationSpec,
    enrichment: list[Element],
    image_cache: dict[tuple, list[Element]],
    n_max: int,
    order: int,
) -> list[Subspace]:
    product = kind_product(model, spec.kind)
    dim = model.dim

    images = []
    for x in enrichment:
        key = x.coords
        if key not in image_cache:
            image_cache[key] = gamma_images(model, spec.family, x, order)
        images.append(image_cache[key])

    # span of the gamma images per weight i
    weight_spans: list[Subspace] = [Subspace.zero(dim)]
    for i in range(1, order + 1):
        weight_spans.append(
            Subspace.span(dim, [img[i].coords for img in images])
        )
    weight_basis = [
        [model.from_coords(r) for r in w.basis_vectors()] for w in weight_spans
    ]

    # monomial spans: M[n] = span of products of gamma images of total weight >= n
    all_gamma = [v for i in range(1, order + 1) for v in weight_basis[i]]
    monomials: dict[int, Subspace] = {}
    monomials[1] = _close_under_products(model, product, list(all_gamma), all_gamma)
    m_basis = {1: [model.from_coords(r) for r in monomials[1].basis_vectors()]}
    for n in range(2, n_max + 1):
        vectors: list[Element] = []
        for i in range(1, order + 1):
            if i >= n:
                vectors.extend(weight_basis[i])
            lower = m_basis[max(n - i, 1)]
            for gen in weight_basis[i]:
                for b in lower:
                    prod = product(gen, b)
                    if not prod.is_zero():
                        vectors.append(prod)
        monomials[n] = Subspace.span(dim, [v.coords for v in vectors])
        m_basis[n] = [model.from_coords(r) for r in monomials[n].basis_vectors()]

    # close each stage under multiplication by the augmentation subring
    subring = [model.basis_element(i) for i in spec.subring_indices(model)]
    kernel = Subspace.span(
        dim, [model.basis_element(i).coords for i in spec.kernel_indices(model)]
    )
    stages = [Subspace.full(dim), kernel]
    for n in range(2, n_max + 1):
        vectors = [model.from_coords(r) for r in monomials[n].basis_vectors()]
        closed = list(vectors)
        for s in subring:
            for v in vectors:
                prod = product(s, v)
                if not prod.is_zero():
                    closed.append(prod)
        stages.append(Subspace.span(dim, [v.coords for v in closed]))
    return stages


def compute_filtration(
    model: ModelAlgebra,
    spec: FiltrationSpec | str,
    n_max: int,
    method: str = "saturation",
    *,
    order: int | None = None,
    seed: int = 0,
    max_rounds: int = 8,
) -> FiltrationResult:
    """Compute stages 0..n_max of the filtration as canonical subspaces."""
    if isinstance(spec, str):
        spec = FiltrationSpec(spec)
    if n_max < 0:
        raise DomainError("n_max must be non-negative")
    if order is None:
        order = model.default_series_order
    if order < n_max:
        raise SeriesOrderError(
            f"series order {order} is below the requested stage {n_max}"
        )
    axiom_ok, axiom_witness = spec.augmentation_is_morphism(model)

    if method == "eigen_sum":
        stages = [Subspace.full(model.dim)]
        for n in range(1, n_max + 1):
            idx = [
                i for i in range(model.dim) if spec.weight(model, i) >= n
            ]
            stages.append(
                Subspace.span(
                    model.dim, [model.basis_element(i).coords for i in idx]
                )
            )
        dims = tuple(s.dim for s in stages)
        return FiltrationResult(
            spec.kind, method, tuple(stages), (dims,), axiom_ok, axiom_witness,
            order, seed,
        )
    if method != "saturation":
        raise DomainError(f"unknown filtration method {method!r}")

    kernel_basis = [
        model.basis_element(i) for i in spec.kernel_indices(model)
    ]
    rng = random.Random(seed)
    image_cache: dict[tuple, list[Element]] = {}

    enrichment = list(kernel_basis)
    for i in range(len(kernel_basis)):
        for j in range(i + 1, len(kernel_basis)):
            enrichment.append(kernel_basis[i] + kernel_basis[j])

    rounds: list[tuple[int, ...]] = []
    stages = None
    for _ in range(max_rounds):
        stages = _saturation_stages(
            model, spec, enrichment, image_cache, n_max, order
        )
        dims = tuple(s.dim for s in stages)
        rounds.append(dims)
        if len(rounds) >= 2 and rounds[-1] == rounds[-2]:
            return FiltrationResult(
                spec.kind, "saturation", tuple(stages), tuple(rounds),
                axiom_ok, axiom_witness, order, seed,
            )
        for _ in range(2 * model.dim):
            combo = _random_combination(model, rng, kernel_basis)
            if not combo.is_zero():
                enrichment.append(combo)
    raise ConvergenceError(
        f"saturation did not stabilise within {max_rounds} rounds",
        rounds[-2] if len(rounds) >= 2 else (),
        rounds[-1],
    )


# -- checkers -----------------------------------------------------------------


@dataclass(frozen=True)
class QVerdict:
    q: int
    ok: bool
    witness: Element | None = None


@dataclass(frozen=True)
class PiGammaReport:
    """Per-stage verdicts of the inclusion of the pi filtration in the
    gamma one, with the unconditionally provable stages flagged."""

    g: int
    verdicts: tuple[QVerdict, ...]
    proved_stages: tuple[int, ...]
    proved_failures: tuple[QVerdict, ...]

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)

    @property
    def admissibility_ok(self) -> bool:
        """False when a provable stage fails: the model then violates the
        one-dimensionality facts the proof of those stages rests on."""
        return not self.proved_failures

    def verdict(self, q: int) -> QVerdict:
        return self.verdicts[q]

    def failing_stages(self) -> tuple[int, ...]:
        return tuple(v.q for v in self.verdicts if not v.ok)


def _first_missing(
    model: ModelAlgebra, sub: Subspace, space: Subspace
) -> Element | None:
    for row in sub.basis_vectors():
        if not space.contains(row):
            return model.from_coords(row)
    return None


def check_pi_subset_gamma(
    model: ModelAlgebra,
    up_to: int | None = None,
    *,
    pi_result: FiltrationResult | None = None,
    gamma_result: FiltrationResult | None = None,
    seed: int = 0,
) -> PiGammaReport:
    """Check stage-wise containment of the pi filtration in the gamma one."""
    g = model.g
    q_max = g if up_to is None else min(up_to, g)
    if pi_result is None:
        pi_result = compute_filtration(model, "pi", q_max, seed=seed)
    if gamma_result is None:
        gamma_result = compute_filtration(model, "gamma", q_max, seed=seed)
    verdicts = []
    for q in range(q_max + 1):
        missing = _first_missing(
            model, pi_result.stage(q), gamma_result.stage(q)
        )
        verdicts.append(QVerdict(q, missing is None, missing))
    proved = tuple(sorted({0, 1, g - 1, g} & set(range(q_max + 1))))
    failures = tuple(v for v in verdicts if v.q in proved and not v.ok)
    return PiGammaReport(g, tuple(verdicts), proved, failures)


@dataclass(frozen=True)
class LemmaEquivalenceReport:
    """Truth values of the four equivalent criteria for a homogeneous class
    x in K^p_q with p > 0 and g - q > 0:

    (1) p >= g - q;
    (2) the i-th pi-gamma operation of x lies in gamma stage i for all i;
    (3) the same at i = g - q;
    (4) the same at i = p + 1.
    """

    p: int
    q: int
    statements: dict[int, bool]

    @property
    def equivalent(self) -> bool:
        return len(set(self.statements.values())) == 1

    @property
    def ok(self) -> bool:
        return self.equivalent


def check_lemma_equivalences(
    model: ModelAlgebra,
    x: Element,
    *,
    gamma_result: FiltrationResult | None = None,
    order: int | None = None,
    seed: int = 0,
) -> LemmaEquivalenceReport:
    if order is None:
        order = model.default_series_order
    support_bd = {model.bidegrees[i] for i, c in enumerate(x.coords) if c}
    if len(support_bd) != 1:
        raise DomainError("the equivalence criteria need a homogeneous class")
    (p, q) = next(iter(support_bd))
    g = model.g
    if p <= 0 or g - q <= 0:
        raise DomainError("the equivalence criteria need p > 0 and q < g")
    if gamma_result is None:
        gamma_result = compute_filtration(
            model, "gamma", order, order=order, seed=seed
        )
    images = gamma_images(model, "pi", x, order)
    in_stage = [
        gamma_result.stage(i).contains(images[i].coords)
        for i in range(order + 1)
    ]
    statements = {
        1: p >= g - q,
        2: all(in_stage[1:]),
        3: in_stage[g - q],
        4: in_stage[p + 1] if p + 1 <= order else True,
    }
    return LemmaEquivalenceReport(p, q, statements)


@dataclass(frozen=True)
class StatementResult:
    status: str  # "pass" | "fail" | "skipped"
    detail: str = ""
    witness: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "fail"


@dataclass(frozen=True)
class ComposedStructureReport:
    """Verdicts for the composed-structure statements on one model."""

    g: int
    statements: dict[str, StatementResult]
    stage_dims: tuple[int, ...]
    kernel_dim: int

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.statements.values())


def _index_product_check(model: ModelAlgebra) -> StatementResult:
    for i in range(model.dim):
        ji = model.beauville_index_of(i)
        if ji <= 0:
            continue
        for k in range(model.dim):
            jk = model.beauville_index_of(k)
            if jk >= 0:
                continue
            prod = model.basis_element(i) * model.basis_element(k)
            if not prod.is_zero():
                return StatementResult(
                    "fail",
                    detail=(
                        f"index {ji} class times index {jk} class is nonzero"
                    ),
                    witness=f"({model.labels[i]}, {model.labels[k]})",
                )
    return StatementResult("pass")


def _bloch_product_check(model: ModelAlgebra) -> StatementResult:
    g = model.g
    for i in range(model.dim):
        p1, q1 = model.bidegrees[i]
        if q1 != g or p1 < 1:
            continue
        for k in range(model.dim):
            p2, q2 = model.bidegrees[k]
            if p1 >= q2 + 1:
                prod = model.basis_element(i) * model.basis_element(k)
                if not prod.is_zero():
                    return StatementResult(
                        "fail",
                        detail="a K^r_g class with r > n meets a K^s_n class",
                        witness=f"({model.labels[i]}, {model.labels[k]})",
                    )
    return StatementResult("pass")


def _binomial_lambda(model: ModelAlgebra, y: Element, i: int) -> Element:
    """lambda_beta^i(y) = y (y-1) ... (y-i+1) / i! in the index-0 subring."""
    result = model.one()
    for t in range(i):
        result = result * (y - t * model.one())
    return Fraction(1, _factorial(i)) * result


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def check_composed_structure(
    model: ModelAlgebra,
    *,
    gamma_big_result: FiltrationResult | None = None,
    seed: int = 0,
) -> ComposedStructureReport:
    g = model.g
    n_max = g + 2
    result = (
        gamma_big_result
        if gamma_big_result is not None
        else compute_filtration(model, "Gamma", n_max, seed=seed)
    )
    stages = list(result.stages)
    spec = FiltrationSpec("Gamma")
    statements: dict[str, StatementResult] = {}

    statements["conj-2-products"] = _index_product_check(model)
    conj2_ok = statements["conj-2-products"].status == "pass"

    if not conj2_ok:
        statements["lem-epsilon-gamma-morphism"] = StatementResult(
            "skipped",
            detail=(
                "hypothesis violated: nonzero product of positive- and "
                "negative-index classes, so the index-0 projection is not a "
                "ring morphism"
            ),
        )
    else:
        ok = True
        witness = ""
        morphism_ok, pair = spec.augmentation_is_morphism(model)
        if not morphism_ok:
            ok, witness = False, pair or ""
        if ok:
            for i in range(model.dim):
                x = model.basis_element(i)
                for idx in range(1, g + 1):
                    # lambda of the composed structure, then project
                    lam = _composed_lambda(model, idx, x)
                    lhs = lam.beauville_component(0)
                    rhs = _binomial_lambda(
                        model, x.beauville_component(0), idx
                    )
                    if lhs != rhs:
                        ok, witness = False, f"{model.labels[i]} at i={idx}"
                        break
                if not ok:
                    break
        statements["lem-epsilon-gamma-morphism"] = StatementResult(
            "pass" if ok else "fail", witness=witness
        )

    # stage 1 of the composed filtration sits inside the rank kernel
    kernel_gamma = Subspace.span(
        model.dim,
        [
            model.basis_element(i).coords
            for i in range(model.dim)
            if i != model.unit_index
        ],
    )
    fil1_ok = stages[1].is_subspace_of(kernel_gamma)
    statements["lem-fil1"] = StatementResult("pass" if fil1_ok else "fail")

    # index blocks lie deep in the filtration: K[j] in stage r for j<0 or j>=r
    fil2_ok = True
    fil2_witness = ""
    for j in range(-g, g + 1):
        idx = model.indices_by_index(j)
        if not idx:
            continue
        block = Subspace.span(
            model.dim, [model.basis_element(i).coords for i in idx]
        )
        for r in range(n_max + 1):
            if j < 0 or j >= r:
                if not block.is_subspace_of(stages[r]):
                    fil2_ok = False
                    fil2_witness = f"index {j} block at stage {r}"
                    break
        if not fil2_ok:
            break
    statements["lem-fil2"] = StatementResult(
        "pass" if fil2_ok else "fail", witness=fil2_witness
    )

    # the complete-Chern kernel, computed two independent ways
    intersection = stages[0]
    for s in stages[1:]:
        intersection = intersection.intersect(s)
    stabilised = stages[g + 1] == stages[g + 2]

    kernel_indices = spec.kernel_indices(model)
    candidates = [model.basis_element(i) for i in kernel_indices]
    for a in range(len(kernel_indices)):
        for b in range(a + 1, len(kernel_indices)):
            candidates.append(candidates[a] + candidates[b])
    rng = random.Random(seed)
    base = [model.basis_element(i) for i in kernel_indices]
    for _ in range(2 * model.dim):
        combo = _random_combination(model, rng, base)
        if not combo.is_zero():
            candidates.append(combo)
    survivors = []
    for x in candidates:
        chern = complete_chern(model, x, stages)
        if chern.is_zero:
            survivors.append(x)
    searched = Subspace.span(model.dim, [x.coords for x in survivors])

    agree = searched == intersection and stabilised
    top_equal = intersection == stages[g + 1]
    statements["prop-kernel-c"] = StatementResult(
        "pass" if (agree and top_equal) else "fail",
        detail=(
            f"intersection dim {intersection.dim}, spanning-search dim "
            f"{searched.dim}, stage {g + 1} dim {stages[g + 1].dim}, "
            f"stages {g + 1} and {g + 2} "
            + ("stabilised" if stabilised else "did not stabilise")
        ),
    )

    conj3_ok = stages[g + 1].dim == 0
    conj3_witness = ""
    if not conj3_ok:
        conj3_witness = str(model.from_coords(stages[g + 1].basis_vectors()[0]))
    statements["conj-3-vanishing"] = StatementResult(
        "pass" if conj3_ok else "fail", witness=conj3_witness
    )

    statements["bloch-products"] = _bloch_product_check(model)

    return ComposedStructureReport(
        g, statements, tuple(s.dim for s in stages), stages[1].dim
    )


def _composed_lambda(model: ModelAlgebra, i: int, x: Element) -> Element:
    """lambda^i of the composed structure: exp of the weighted Adams series
    without the gamma substitution."""
    zero = model.zero()
    order = max(i, 1)
    coeffs = [zero]
    for n in range(1, order + 1):
        coeffs.append(Fraction((-1) ** (n - 1), n) * adams(model, "composed", n, x))
    series = TruncatedSeries(
        coeffs, mul=kind_product(model, "composed"), zero=zero,
        one=kind_unit(model, "composed"),
    )
    return series.exp().coefficient(i)
