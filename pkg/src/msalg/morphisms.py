"""Derived signature morphisms: each sort maps to a word, each operation to
a family of terms, and everything downstream (terms, general terms,
equations, finite algebras) translates along them.

Composition is computed by structural translation of the operation images;
reducts regroup product carriers through explicit order-preserving
bijections rather than identifications.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .algebras import DEFAULT_MAX_ROWS, FiniteAlgebra, product_size, realize, rows, satisfies
from .clones import family_concat
from .errors import (
    SignatureMismatch,
    TableTooLarge,
    TypingError,
)
from .kernel import (
    OperationSymbol,
    Signature,
    Sort,
    SortMap,
    SortedSet,
    Variable,
    Word,
    block_offsets,
    canonical_context,
    coproduct_block,
    coproduct_dagger,
    identity_sort_map,
)
from .terms import (
    App,
    DEFAULT_DEPTH_LIMIT,
    Equation,
    GeneralTerm,
    Term,
    TermFamily,
    Var,
    _substitute,
)


class Polyderivator:
    """A sort-to-word map together with a term family for each operation.

    For an operation s0 ... sk -> s, the image family has domain
    phi.sharp(arity) and codomain phi(s)."""

    __slots__ = ("source", "target", "phi", "images")

    def __init__(self, source: Signature, target: Signature, phi: SortMap,
                 images: Mapping[str, TermFamily]):
        if tuple(phi.source) != tuple(source.sorts):
            raise TypingError("sort map source does not match the source signature")
        for name, op in source.ops.items():
            if name not in images:
                raise TypingError(f"no image family for operation {name}")
            fam = images[name]
            want_dom = phi.sharp(op.arity)
            want_cod = phi(op.coarity)
            if fam.domain != want_dom or fam.codomain != want_cod:
                raise TypingError(
                    f"image of {name}: expected family {want_dom!r} -> {want_cod!r}, "
                    f"got {fam.domain!r} -> {fam.codomain!r}")
            for t in fam.components:
                _check_over_signature(t, target)
        extra = set(images) - set(source.ops)
        if extra:
            raise TypingError(f"images given for unknown operations: {sorted(extra)}")
        self.source = source
        self.target = target
        self.phi = phi
        self.images = {name: images[name] for name in source.ops}

    def image(self, op_name: str) -> TermFamily:
        return self.images[op_name]

    def __eq__(self, other):
        if not isinstance(other, Polyderivator):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.phi == other.phi and self.images == other.images)

    def __repr__(self):
        return f"Polyderivator({len(self.images)} ops, phi={self.phi!r})"


class Derivor(Polyderivator):
    """A polyderivator whose sort images are all single-letter words."""

    def __init__(self, source, target, phi, images):
        super().__init__(source, target, phi, images)
        for s in source.sorts:
            if len(phi(s)) != 1:
                raise TypingError(f"derivor sort image of {s} must be a single letter")


def _check_over_signature(term: Term, sig: Signature):
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, App):
            if sig.ops.get(t.op.name) != t.op:
                raise SignatureMismatch(f"operation {t.op.name} is not part of the target signature")
            stack.extend(t.args)
        else:
            if not sig.has_sort(t.sort):
                raise SignatureMismatch(f"sort {t.sort} is not part of the target signature")


def mk_polyderivator(source: Signature, target: Signature, phi: SortMap,
                     images: Mapping[str, TermFamily]) -> Polyderivator:
    return Polyderivator(source, target, phi, images)


def mk_derivor(source: Signature, target: Signature, sort_map: Mapping[Sort, Sort],
               images: Mapping[str, Term]) -> Derivor:
    """A derivor from single-term operation images."""
    phi = SortMap(source.sorts, target.sorts, {s: Word.of(sort_map[s]) for s in source.sorts})
    families = {}
    for name, op in source.ops.items():
        term = images[name]
        families[name] = TermFamily(phi.sharp(op.arity), phi(op.coarity), [term])
    return Derivor(source, target, phi, families)


def lift_derivor(d: Derivor) -> Polyderivator:
    """Every derivor is a polyderivator; forget the single-letter restriction."""
    return Polyderivator(d.source, d.target, d.phi, d.images)


def lift_standard(source: Signature, target: Signature, sort_map: Mapping[Sort, Sort],
                  op_map: Mapping[str, str]) -> Polyderivator:
    """A sort-respecting operation renaming as a polyderivator."""
    phi = SortMap(source.sorts, target.sorts, {s: Word.of(sort_map[s]) for s in source.sorts})
    images = {}
    for name, op in source.ops.items():
        tgt_op = target.op(op_map[name])
        want_arity = Word(sort_map[s] for s in op.arity)
        if tgt_op.arity != want_arity or tgt_op.coarity != sort_map[op.coarity]:
            raise TypingError(f"renaming of {name} to {tgt_op.name} does not respect sorts")
        ctx = canonical_context(tgt_op.arity)
        images[name] = TermFamily(tgt_op.arity, Word.of(tgt_op.coarity),
                                  [App(tgt_op, [Var(ctx, v) for v in ctx], context=ctx)])
    return Polyderivator(source, target, phi, images)


def identity_polyderivator(sig: Signature) -> Polyderivator:
    phi = identity_sort_map(sig.sorts)
    images = {}
    for name, op in sig.ops.items():
        ctx = canonical_context(op.arity)
        images[name] = TermFamily(op.arity, Word.of(op.coarity),
                                  [App(op, [Var(ctx, v) for v in ctx], context=ctx)])
    return Polyderivator(sig, sig, phi, images)


def _translate_blocks(pd: Polyderivator, term: Term, target_ctx: SortedSet,
                      blocks: Mapping[Variable, Sequence[Term]],
                      memo: dict[int, list[Term]],
                      depth_limit: int = DEFAULT_DEPTH_LIMIT) -> list[Term]:
    """Core translation: a source term becomes the block of its component
    terms over the target context, by structural recursion."""
    hit = memo.get(id(term))
    if hit is not None:
        return hit
    if isinstance(term, Var):
        result = list(blocks[term.variable])
    else:
        flat: list[Term] = []
        for a in term.args:
            flat.extend(_translate_blocks(pd, a, target_ctx, blocks, memo, depth_limit))
        fam = pd.images[term.op.name]
        src = canonical_context(fam.domain)
        if len(flat) != len(src):
            raise TypingError(f"translated arguments of {term.op.name} have the wrong total width")
        images = {src.var_at(k): flat[k] for k in range(len(flat))}
        inner_memo: dict[int, Term] = {}
        result = [_substitute(c, images, target_ctx, inner_memo, depth_limit) for c in fam.components]
    memo[id(term)] = result
    return result


def translate_term(pd: Polyderivator, term: Term,
                   depth_limit: int = DEFAULT_DEPTH_LIMIT) -> TermFamily:
    """Translate a term over a canonical source context into the family of
    its component terms over the canonical target context.

    A variable at position a becomes its block of target variables; an
    application becomes the operation's image family composed with the
    juxtaposed argument blocks."""
    ctx = term.context
    w = ctx.word()
    for s in w:
        if not pd.source.has_sort(s):
            raise SignatureMismatch(f"context sort {s} outside the source signature")
    target_word = pd.phi.sharp(w)
    target_ctx = canonical_context(target_word)
    offsets = block_offsets(pd.phi, w)
    blocks = {
        ctx.var_at(a): [Var(target_ctx, target_ctx.var_at(offsets[a] + i))
                        for i in range(len(pd.phi(w[a])))]
        for a in range(len(w))
    }
    comps = _translate_blocks(pd, term, target_ctx, blocks, {}, depth_limit)
    return TermFamily(target_word, pd.phi(term.sort), comps)


def translate_family(pd: Polyderivator, fam: TermFamily,
                     depth_limit: int = DEFAULT_DEPTH_LIMIT) -> TermFamily:
    """The action on families: translate components and concatenate blocks."""
    return family_concat([translate_term(pd, c, depth_limit) for c in fam.components],
                         domain=pd.phi.sharp(fam.domain))


def compose_polyderivators(outer: Polyderivator, inner: Polyderivator,
                           depth_limit: int = DEFAULT_DEPTH_LIMIT) -> Polyderivator:
    """outer after inner: sort maps compose through sharp, operation images
    translate through the outer morphism."""
    if inner.target != outer.source:
        raise SignatureMismatch("polyderivators are not composable")
    phi = SortMap(inner.source.sorts, outer.target.sorts,
                  {s: outer.phi.sharp(inner.phi(s)) for s in inner.source.sorts})
    images = {name: translate_family(outer, fam, depth_limit)
              for name, fam in inner.images.items()}
    return Polyderivator(inner.source, outer.target, phi, images)


def reduct_algebra(pd: Polyderivator, algebra: FiniteAlgebra,
                   max_rows: int = DEFAULT_MAX_ROWS) -> FiniteAlgebra:
    """The source-signature algebra carried by the target algebra: the
    carrier at sort s is the labeled product along phi(s), the table of an
    operation realizes its image family after regrouping the argument
    tuples into one flat valuation."""
    if algebra.signature != pd.target:
        raise SignatureMismatch("algebra is not over the target signature")
    carriers: dict[Sort, tuple] = {}
    for s in pd.source.sorts:
        n = product_size(algebra.carriers, pd.phi(s))
        if n > max_rows:
            raise TableTooLarge(f"reduct carrier at {s} needs {n} rows (cap {max_rows})")
        carriers[s] = tuple(rows(algebra.carriers, pd.phi(s)))
    tables: dict[str, dict[tuple, tuple]] = {}
    for name, op in pd.source.ops.items():
        fam = pd.images[name]
        ctx = canonical_context(fam.domain)
        n = product_size(carriers, op.arity)
        if n > max_rows:
            raise TableTooLarge(f"reduct table for {name} needs {n} rows (cap {max_rows})")
        table: dict[tuple, tuple] = {}
        for row in rows(carriers, op.arity):
            flat: list = []
            for group in row:
                flat.extend(group)
            valuation = dict(zip(ctx.variables, flat))
            table[row] = tuple(realize(algebra, c, valuation) for c in fam.components)
        tables[name] = table
    return FiniteAlgebra(pd.source, carriers, tables, max_rows=max_rows, check=False)


def translate_general(pd: Polyderivator, p: GeneralTerm,
                      depth_limit: int = DEFAULT_DEPTH_LIMIT) -> GeneralTerm:
    """Translate a general term: contexts become coproduct contexts, and the
    image of a target block variable (y, s, i) is component i of the
    translation of p(y)."""
    co_source = coproduct_dagger(pd.phi, p.source)
    co_target = coproduct_dagger(pd.phi, p.target)
    blocks = {x: [Var(co_source, v) for v in coproduct_block(pd.phi, p.source, co_source, x)]
              for x in p.source}
    memo: dict[int, list[Term]] = {}
    images: dict[Variable, Term] = {}
    for y in p.target:
        comps = _translate_blocks(pd, p(y), co_source, blocks, memo, depth_limit)
        for i, v in enumerate(coproduct_block(pd.phi, p.target, co_target, y)):
            images[v] = comps[i]
    return GeneralTerm(co_source, co_target, images)


def translate_equation(pd: Polyderivator, eq: Equation,
                       depth_limit: int = DEFAULT_DEPTH_LIMIT) -> Equation:
    return Equation(translate_general(pd, eq.lhs, depth_limit),
                    translate_general(pd, eq.rhs, depth_limit))


def theta_valuation(pd: Polyderivator, ctx: SortedSet, co_ctx: SortedSet,
                    valuation: Mapping[Variable, object]) -> dict[Variable, tuple]:
    """The valuation bijection: a target valuation on the coproduct context
    regroups into a reduct valuation on the source context."""
    out: dict[Variable, tuple] = {}
    for x in ctx:
        block = coproduct_block(pd.phi, ctx, co_ctx, x)
        out[x] = tuple(valuation[v] for v in block)
    return out


def satisfaction_condition_check(pd: Polyderivator, algebra: FiniteAlgebra, eq: Equation,
                                 max_rows: int = DEFAULT_MAX_ROWS) -> bool:
    """True iff the reduct satisfies the equation exactly when the target
    algebra satisfies its translation."""
    left = satisfies(reduct_algebra(pd, algebra, max_rows=max_rows), eq, max_rows=max_rows)
    right = satisfies(algebra, translate_equation(pd, eq), max_rows=max_rows)
    return left == right
