"""Free terms over a signature, substitution, generalized terms.

A Term is an immutable well-sorted tree whose every node carries the
context it lives in; substitution re-roots the context explicitly, so
variable capture is impossible by construction and context disagreements
surface as ContextMismatch.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import (
    ArityMismatch,
    ContextMismatch,
    DepthLimitExceeded,
    DomainMismatch,
    NonCanonicalContext,
    SortMismatch,
    TypingError,
    UnknownVariable,
)
from .kernel import (
    OperationSymbol,
    Sort,
    SortedSet,
    Variable,
    Word,
    canonical_context,
    is_canonical,
)

DEFAULT_DEPTH_LIMIT = 32


class Term:
    """Base class; instances are Var or App nodes."""

    __slots__ = ("context", "sort", "depth", "_hash")

    context: SortedSet
    sort: Sort
    depth: int

    def _same_context(self, other: "Term") -> bool:
        return self.context is other.context or self.context == other.context

    def __hash__(self):
        return self._hash


class Var(Term):
    """A variable occurrence."""

    __slots__ = ("variable",)

    def __init__(self, context: SortedSet, variable: Variable):
        if variable not in context:
            raise UnknownVariable(f"variable {variable!r} not in context {context!r}")
        self.context = context
        self.variable = variable
        self.sort = variable.sort
        self.depth = 1
        self._hash = hash(("v", variable))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Var):
            return NotImplemented if not isinstance(other, Term) else False
        return self.variable == other.variable and self._same_context(other)

    __hash__ = Term.__hash__

    def __repr__(self):
        return self.variable.name


class App(Term):
    """An operation applied to argument terms over one shared context."""

    __slots__ = ("op", "args")

    def __init__(self, op: OperationSymbol, args: Sequence[Term], context: SortedSet | None = None,
                 depth_limit: int = DEFAULT_DEPTH_LIMIT):
        args = tuple(args)
        if len(args) != len(op.arity):
            raise ArityMismatch(f"{op.name} expects {len(op.arity)} arguments, got {len(args)}")
        if context is None:
            if not args:
                raise ContextMismatch(f"constant {op.name} needs an explicit context")
            context = args[0].context
        depth = 1
        for i, (arg, expected) in enumerate(zip(args, op.arity)):
            if arg.sort != expected:
                raise SortMismatch(f"argument {i} of {op.name} has sort {arg.sort}, expected {expected}")
            if not (arg.context is context or arg.context == context):
                raise ContextMismatch(f"argument {i} of {op.name} lives in a different context")
            if arg.depth >= depth:
                depth = arg.depth + 1
        if depth > depth_limit:
            raise DepthLimitExceeded(f"term depth {depth} exceeds limit {depth_limit}")
        self.op = op
        self.args = args
        self.context = context
        self.sort = op.coarity
        self.depth = depth
        self._hash = hash(("a", op.name, tuple(a._hash for a in args)))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, App):
            return NotImplemented if not isinstance(other, Term) else False
        if self.op != other.op or self._hash != other._hash:
            return False
        return self.args == other.args and self._same_context(other)

    __hash__ = Term.__hash__

    def __repr__(self):
        if not self.args:
            return self.op.name
        return f"{self.op.name}({', '.join(map(repr, self.args))})"


def mk_var(context: SortedSet, which) -> Term:
    """Variable term by Variable, name, or position."""
    if isinstance(which, Variable):
        return Var(context, which)
    if isinstance(which, int):
        return Var(context, context.var_at(which))
    return Var(context, context.by_name(which))


def mk_app(op: OperationSymbol, args: Sequence[Term], context: SortedSet | None = None,
           depth_limit: int = DEFAULT_DEPTH_LIMIT) -> Term:
    return App(op, args, context=context, depth_limit=depth_limit)


def free_positions(term: Term) -> set[int]:
    """Positions of the context variables that actually occur."""
    out: set[int] = set()
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            out.add(t.context.position(t.variable))
        else:
            stack.extend(t.args)
    return out


def _substitute(term: Term, images: Mapping[Variable, Term], context: SortedSet,
                memo: dict[int, Term], depth_limit: int) -> Term:
    hit = memo.get(id(term))
    if hit is not None:
        return hit
    if isinstance(term, Var):
        try:
            result = images[term.variable]
        except KeyError:
            raise UnknownVariable(f"no image for variable {term.variable!r}") from None
        if result.sort != term.sort:
            raise SortMismatch(f"image of {term.variable!r} has sort {result.sort}, expected {term.sort}")
    else:
        new_args = [_substitute(a, images, context, memo, depth_limit) for a in term.args]
        if all(a is b for a, b in zip(new_args, term.args)) and term.context is context:
            result = term
        else:
            result = App(term.op, new_args, context=context, depth_limit=depth_limit)
    memo[id(term)] = result
    return result


class TermFamily:
    """A word-indexed tuple of terms over a shared canonical context.

    A family u -> w has |w| components; component i is a term of sort w_i
    over the canonical context of u.  Families are the morphisms of the
    clone of terms.
    """

    __slots__ = ("domain", "codomain", "components", "_hash")

    def __init__(self, domain: Word, codomain: Word, components: Sequence[Term]):
        domain = Word(domain)
        codomain = Word(codomain)
        components = tuple(components)
        if len(components) != len(codomain):
            raise ArityMismatch(
                f"family to {codomain!r} needs {len(codomain)} components, got {len(components)}")
        ctx = canonical_context(domain)
        for i, (t, expected) in enumerate(zip(components, codomain)):
            if t.sort != expected:
                raise SortMismatch(f"component {i} has sort {t.sort}, expected {expected}")
            if not (t.context is ctx or t.context == ctx):
                raise ContextMismatch(f"component {i} is not over the canonical context of {domain!r}")
        self.domain = domain
        self.codomain = codomain
        self.components = components
        self._hash = hash((domain, codomain, tuple(t._hash for t in components)))

    @property
    def context(self) -> SortedSet:
        return canonical_context(self.domain)

    @staticmethod
    def identity(w: Word) -> "TermFamily":
        ctx = canonical_context(w)
        return TermFamily(w, w, [Var(ctx, v) for v in ctx])

    def __eq__(self, other):
        if not isinstance(other, TermFamily):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self.components == other.components)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"[{', '.join(map(repr, self.components))}] : {self.domain!r} -> {self.codomain!r}"


def substitute(term: Term, family: TermFamily, depth_limit: int = DEFAULT_DEPTH_LIMIT) -> Term:
    """Replace each canonical variable v_i of term by family component i.

    term must live over the canonical context of the family's codomain
    word; the result lives over the canonical context of its domain word.
    """
    src = canonical_context(family.codomain)
    if not (term.context is src or term.context == src):
        raise ContextMismatch(
            f"term context {term.context!r} is not the canonical context of {family.codomain!r}")
    images = {src.var_at(i): family.components[i] for i in range(len(src))}
    return _substitute(term, images, canonical_context(family.domain), {}, depth_limit)


class GeneralTerm:
    """An assignment of a term over X to every variable of Y: a morphism
    X -> Y of the substitution calculus on arbitrary contexts."""

    __slots__ = ("source", "target", "_images", "_hash")

    def __init__(self, source: SortedSet, target: SortedSet, images: Mapping[Variable, Term]):
        body: dict[Variable, Term] = {}
        for y in target:
            try:
                t = images[y]
            except KeyError:
                raise UnknownVariable(f"no image for target variable {y!r}") from None
            if t.sort != y.sort:
                raise SortMismatch(f"image of {y!r} has sort {t.sort}, expected {y.sort}")
            if not (t.context is source or t.context == source):
                raise ContextMismatch(f"image of {y!r} is not over the source context")
            body[y] = t
        if len(images) != len(body):
            extra = set(images) - set(body)
            raise UnknownVariable(f"images given for variables outside the target: {extra}")
        self.source = source
        self.target = target
        self._images = body
        self._hash = hash((source, target, tuple(body[y]._hash for y in target)))

    def __call__(self, y: Variable) -> Term:
        try:
            return self._images[y]
        except KeyError:
            raise UnknownVariable(f"variable {y!r} not in the target context") from None

    @property
    def images(self) -> Mapping[Variable, Term]:
        return self._images

    @staticmethod
    def identity(ctx: SortedSet) -> "GeneralTerm":
        return GeneralTerm(ctx, ctx, {v: Var(ctx, v) for v in ctx})

    def __eq__(self, other):
        if not isinstance(other, GeneralTerm):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and all(self._images[y] == other._images[y] for y in self.target))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{y.name} -> {self._images[y]!r}" for y in self.target)
        return f"GeneralTerm({body})"


def kleisli_compose(outer: GeneralTerm, inner: GeneralTerm,
                    depth_limit: int = DEFAULT_DEPTH_LIMIT) -> GeneralTerm:
    """outer after inner: each target variable z of outer maps to outer(z)
    with every middle variable replaced by its inner image."""
    if not (outer.source is inner.target or outer.source == inner.target):
        raise ContextMismatch("source of the outer term differs from target of the inner term")
    memo: dict[int, Term] = {}
    images = {
        z: _substitute(outer(z), inner.images, inner.source, memo, depth_limit)
        for z in outer.target
    }
    return GeneralTerm(inner.source, outer.target, images)


def general_from_family(family: TermFamily) -> GeneralTerm:
    """Transpose a family u -> w into a general term over canonical contexts."""
    src = canonical_context(family.domain)
    tgt = canonical_context(family.codomain)
    images = {tgt.var_at(i): family.components[i] for i in range(len(tgt))}
    return GeneralTerm(src, tgt, images)


def family_from_general(p: GeneralTerm) -> TermFamily:
    """Inverse transposition; both contexts must be canonical."""
    if not (is_canonical(p.source) and is_canonical(p.target)):
        raise NonCanonicalContext("family_from_general needs canonical source and target contexts")
    dom = p.source.word()
    cod = p.target.word()
    src = canonical_context(dom)
    if p.source is not src and p.source == src:
        # re-root over the cached context object
        memo: dict[int, Term] = {}
        ident = {v: Var(src, v) for v in src}
        components = [_substitute(p(p.target.var_at(i)), ident, src, memo, DEFAULT_DEPTH_LIMIT)
                      for i in range(len(cod))]
    else:
        components = [p(p.target.var_at(i)) for i in range(len(cod))]
    return TermFamily(dom, cod, components)


class Equation:
    """A pair of parallel general terms X -> Y."""

    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs: GeneralTerm, rhs: GeneralTerm):
        if lhs.source != rhs.source or lhs.target != rhs.target:
            raise ContextMismatch("equation sides must be parallel")
        self.lhs = lhs
        self.rhs = rhs

    @property
    def source(self) -> SortedSet:
        return self.lhs.source

    @property
    def target(self) -> SortedSet:
        return self.lhs.target

    @staticmethod
    def of_terms(lhs: Term, rhs: Term) -> "Equation":
        """Equation between two terms over one shared context."""
        if not (lhs.context is rhs.context or lhs.context == rhs.context):
            raise ContextMismatch("equation sides live in different contexts")
        if lhs.sort != rhs.sort:
            raise SortMismatch(f"equation sides have sorts {lhs.sort} and {rhs.sort}")
        target = SortedSet([Variable("lhs=rhs", lhs.sort)])
        y = target.var_at(0)
        return Equation(GeneralTerm(lhs.context, target, {y: lhs}),
                        GeneralTerm(rhs.context, target, {y: rhs}))

    def __eq__(self, other):
        if not isinstance(other, Equation):
            return NotImplemented
        return self.lhs == other.lhs and self.rhs == other.rhs

    def __hash__(self):
        return hash((self.lhs, self.rhs))

    def __repr__(self):
        return f"Equation({self.lhs!r} = {self.rhs!r})"
