"""Transformations between derived signature morphisms: 2-cells.

A transformation assigns to each source sort a family between the two sort
images; the defining squares are checked strictly (literal family equality)
or modulo a target theory (decided for generated free clone theories,
verified on finite models otherwise).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebras import DEFAULT_MAX_ROWS, FiniteAlgebra, check_homomorphism, realize, satisfies
from .clones import equal_mod_free_theory, family_compose, family_parallel
from .errors import EndpointMismatch, ModelNotAModel, NotAHomomorphism, TypingError
from .kernel import Sort, SortedSet, Variable, Word, canonical_context, coproduct_block, coproduct_dagger
from .morphisms import Polyderivator, reduct_algebra, translate_family
from .terms import Equation, GeneralTerm, Term, TermFamily, Var, _substitute, DEFAULT_DEPTH_LIMIT


@dataclass(frozen=True)
class Proved:
    def __str__(self):
        return "Proved"


@dataclass(frozen=True)
class VerifiedOnModels:
    models: int

    def __str__(self):
        return f"VerifiedOnModels({self.models})"


@dataclass(frozen=True)
class Refuted:
    operation: str
    model: str | None = None
    detail: str | None = None

    def __str__(self):
        where = f" on model {self.model}" if self.model else ""
        return f"Refuted({self.operation}{where})"


class Transformation:
    """A per-sort family intertwining two parallel morphisms."""

    __slots__ = ("source_pd", "target_pd", "xi")

    def __init__(self, source_pd: Polyderivator, target_pd: Polyderivator,
                 xi: Mapping[Sort, TermFamily]):
        if source_pd.source != target_pd.source or source_pd.target != target_pd.target:
            raise EndpointMismatch("transformation endpoints are not parallel morphisms")
        for s in source_pd.source.sorts:
            if s not in xi:
                raise TypingError(f"no component for sort {s}")
            fam = xi[s]
            if fam.domain != source_pd.phi(s) or fam.codomain != target_pd.phi(s):
                raise TypingError(
                    f"component at {s} has type {fam.domain!r} -> {fam.codomain!r}, "
                    f"expected {source_pd.phi(s)!r} -> {target_pd.phi(s)!r}")
        self.source_pd = source_pd
        self.target_pd = target_pd
        self.xi = {s: xi[s] for s in source_pd.source.sorts}

    def component(self, s: Sort) -> TermFamily:
        return self.xi[s]

    def word_component(self, w: Word) -> TermFamily:
        """The juxtaposition of the components along a word."""
        return family_parallel([self.xi[s] for s in w])

    def __eq__(self, other):
        if not isinstance(other, Transformation):
            return NotImplemented
        return (self.source_pd == other.source_pd and self.target_pd == other.target_pd
                and self.xi == other.xi)

    def __repr__(self):
        return f"Transformation({len(self.xi)} components)"


def identity_transformation(pd: Polyderivator) -> Transformation:
    return Transformation(pd, pd, {s: TermFamily.identity(pd.phi(s)) for s in pd.source.sorts})


def _square_sides(tr: Transformation, op_name: str) -> tuple[TermFamily, TermFamily]:
    op = tr.source_pd.source.op(op_name)
    left = family_compose(tr.xi[op.coarity], tr.source_pd.image(op_name))
    right = family_compose(tr.target_pd.image(op_name), tr.word_component(op.arity))
    return left, right


def check_transformation_strict(tr: Transformation) -> tuple[bool, str | None]:
    """Literal family equality of the defining squares; returns the first
    failing operation name as witness."""
    for name in tr.source_pd.source.ops:
        left, right = _square_sides(tr, name)
        if left != right:
            return False, name
    return True, None


def _named_equations(spec) -> Sequence[tuple[str, Equation]]:
    eqs = spec.equations
    if isinstance(eqs, Mapping):
        return list(eqs.items())
    return list(eqs)


def check_transformation_mod(tr: Transformation, target_spec=None,
                             models: Sequence[FiniteAlgebra] = (),
                             model_names: Sequence[str] | None = None,
                             max_rows: int = DEFAULT_MAX_ROWS):
    """Check the defining squares modulo a target theory.

    Proved: the squares hold strictly, or the target theory is a generated
    free clone theory and the word problem decides every square.
    VerifiedOnModels: every supplied model of the theory satisfies every
    square componentwise.  Refuted: witness operation (and model).
    """
    names = list(model_names) if model_names is not None else [f"model{i}" for i in range(len(models))]
    if target_spec is not None:
        for label, model in zip(names, models):
            for eq_name, eq in _named_equations(target_spec):
                if not satisfies(model, eq, max_rows=max_rows):
                    raise ModelNotAModel(f"{label} violates axiom {eq_name}")
    strict, _ = check_transformation_strict(tr)
    if strict:
        return Proved()
    flavor = getattr(target_spec, "free_flavor", None)
    if flavor is not None:
        for name in tr.source_pd.source.ops:
            left, right = _square_sides(tr, name)
            for lc, rc in zip(left.components, right.components):
                if not equal_mod_free_theory(lc, rc, flavor):
                    return Refuted(name, detail="free-theory word problem")
        return Proved()
    if not models:
        _, witness = check_transformation_strict(tr)
        return Refuted(witness or "?", detail="no models supplied and squares are not strict")
    for name in tr.source_pd.source.ops:
        left, right = _square_sides(tr, name)
        for lc, rc in zip(left.components, right.components):
            eq = Equation.of_terms(lc, rc)
            for label, model in zip(names, models):
                if not satisfies(model, eq, max_rows=max_rows):
                    return Refuted(name, model=label)
    return VerifiedOnModels(len(models))


def vertical_compose(upper: Transformation, lower: Transformation) -> Transformation:
    """upper after lower: componentwise composition of the families."""
    if lower.target_pd != upper.source_pd:
        raise EndpointMismatch("vertical composition needs matching middle morphisms")
    xi = {s: family_compose(upper.xi[s], lower.xi[s]) for s in lower.source_pd.source.sorts}
    return Transformation(lower.source_pd, upper.target_pd, xi)


def horizontal_compose(chi: Transformation, xi: Transformation) -> Transformation:
    """Whiskered composite of xi (between morphisms out of the inner
    signature) and chi (between morphisms out of the middle one).

    Both defining formulas are computed and must agree; a mismatch is an
    engine bug and is raised, not returned."""
    h, i = chi.source_pd, chi.target_pd
    d, e = xi.source_pd, xi.target_pd
    if d.target != h.source:
        raise EndpointMismatch("horizontal composition needs composable endpoint signatures")
    from .morphisms import compose_polyderivators

    source_pd = compose_polyderivators(h, d)
    target_pd = compose_polyderivators(i, e)
    components: dict[Sort, TermFamily] = {}
    for s in d.source.sorts:
        via_h = family_compose(chi.word_component(e.phi(s)), translate_family(h, xi.xi[s]))
        via_i = family_compose(translate_family(i, xi.xi[s]), chi.word_component(d.phi(s)))
        if via_h != via_i:
            raise RuntimeError(
                f"internal: the two horizontal composition formulas disagree at sort {s}")
        components[s] = via_h
    return Transformation(source_pd, target_pd, components)


def induced_homomorphism(tr: Transformation, algebra: FiniteAlgebra,
                         require_strict: bool = True, check: bool = True,
                         max_rows: int = DEFAULT_MAX_ROWS) -> dict[Sort, dict]:
    """The per-sort map between the two reducts obtained by realizing each
    component family; checked to be a homomorphism."""
    if algebra.signature != tr.source_pd.target:
        raise EndpointMismatch("algebra is not over the target signature")
    if require_strict:
        ok, witness = check_transformation_strict(tr)
        if not ok:
            raise EndpointMismatch(f"transformation is not strict (fails at {witness})")
    left = reduct_algebra(tr.source_pd, algebra, max_rows=max_rows)
    right = reduct_algebra(tr.target_pd, algebra, max_rows=max_rows)
    maps: dict[Sort, dict] = {}
    for s in tr.source_pd.source.sorts:
        fam = tr.xi[s]
        ctx = canonical_context(fam.domain)
        component: dict = {}
        for row in left.carriers[s]:
            valuation = dict(zip(ctx.variables, row))
            component[row] = tuple(realize(algebra, c, valuation) for c in fam.components)
        maps[s] = component
    if check and not check_homomorphism(maps, left, right):
        raise NotAHomomorphism("internal: induced map fails the homomorphism square")
    return maps


def transformation_on_context(tr: Transformation, ctx: SortedSet) -> GeneralTerm:
    """The general term between the two coproduct contexts: block variable
    (x, s, i) maps to component i of the sort component with its canonical
    variables renamed into the block of x."""
    phi, psi = tr.source_pd.phi, tr.target_pd.phi
    co_src = coproduct_dagger(phi, ctx)
    co_tgt = coproduct_dagger(psi, ctx)
    images: dict[Variable, Term] = {}
    for x in ctx:
        fam = tr.xi[x.sort]
        src = canonical_context(fam.domain)
        block = coproduct_block(phi, ctx, co_src, x)
        renaming = {src.var_at(j): Var(co_src, block[j]) for j in range(len(block))}
        memo: dict[int, Term] = {}
        target_block = coproduct_block(psi, ctx, co_tgt, x)
        for i, v in enumerate(target_block):
            images[v] = _substitute(fam.components[i], renaming, co_src, memo, DEFAULT_DEPTH_LIMIT)
    return GeneralTerm(co_src, co_tgt, images)
