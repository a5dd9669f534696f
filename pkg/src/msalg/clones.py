"""The clone of term families: projections, tupling, composition, parallel
juxtaposition, and evaluation of formal clone terms into it.

Formal clone terms live over generated signatures whose sorts encode pairs
(arity word, result sort) or (domain word, codomain word); the encoding is
a bracketed rendering that round-trips through the spec language.  Equality
of clone terms modulo the generated equational theory is decided by
evaluating into the free concrete clone under a generic environment.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import (
    ArityMismatch,
    ContextMismatch,
    DomainMismatch,
    IndexOutOfRange,
    SortMismatch,
    TypingError,
    UnboundCloneVariable,
)
from .kernel import (
    OperationSymbol,
    Signature,
    Sort,
    SortedSet,
    Variable,
    Word,
    canonical_context,
    concat,
)
from .terms import (
    App,
    DEFAULT_DEPTH_LIMIT,
    Term,
    TermFamily,
    Var,
    _substitute,
    substitute,
)

# ---------------------------------------------------------------------------
# clone-sort encoding


def render_word(w: Word) -> str:
    return "(" + " ".join(s.name for s in w) + ")"


def hall_sort(w: Word, s: Sort) -> Sort:
    """The sort encoding the pair (arity word, result sort)."""
    return Sort(f"({render_word(w)} {s.name})")


def benabou_sort(u: Word, w: Word) -> Sort:
    """The sort encoding the pair (domain word, codomain word)."""
    return Sort(f"({render_word(u)} {render_word(w)})")


def _tokenize_sexpr(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _parse_tree(tokens: list[str], pos: int):
    tok = tokens[pos]
    if tok == "(":
        items = []
        pos += 1
        while pos < len(tokens) and tokens[pos] != ")":
            item, pos = _parse_tree(tokens, pos)
            items.append(item)
        if pos >= len(tokens):
            raise TypingError("unbalanced clone-sort rendering")
        return tuple(items), pos + 1
    return tok, pos + 1


def _is_base_word(tree) -> bool:
    return isinstance(tree, tuple) and all(isinstance(item, str) for item in tree)


@lru_cache(maxsize=None)
def parse_clone_sort(sort: Sort):
    """Decode a clone sort name.  Returns ("hall", w, s), ("benabou", u, w),
    or None for ordinary sorts."""
    name = sort.name
    if not name.startswith("("):
        return None
    tokens = _tokenize_sexpr(name)
    try:
        tree, end = _parse_tree(tokens, 0)
    except (TypingError, IndexError):
        return None
    if end != len(tokens) or not isinstance(tree, tuple) or len(tree) != 2:
        return None
    first, second = tree
    if not _is_base_word(first):
        return None
    w = Word(Sort(n) for n in first)
    if isinstance(second, str):
        return ("hall", w, Sort(second))
    if _is_base_word(second):
        return ("benabou", w, Word(Sort(n) for n in second))
    return None


def is_clone_sort_name(name: str) -> bool:
    return parse_clone_sort(Sort(name)) is not None


# ---------------------------------------------------------------------------
# structure of the clone of term families


def family_project(u: Word, i: int) -> TermFamily:
    """The one-component projection family u -> (u_i)."""
    if not 0 <= i < len(u):
        raise IndexOutOfRange(f"projection index {i} outside word of length {len(u)}")
    ctx = canonical_context(u)
    return TermFamily(u, Word.of(u[i]), [Var(ctx, ctx.var_at(i))])


def family_concat(families: Sequence[TermFamily], domain: Word | None = None) -> TermFamily:
    """Blockwise tupling of families over one shared domain."""
    families = list(families)
    if not families:
        if domain is None:
            raise DomainMismatch("empty tupling needs an explicit domain word")
        return TermFamily(Word(domain), Word(), [])
    dom = families[0].domain
    if domain is not None and Word(domain) != dom:
        raise DomainMismatch("explicit domain disagrees with the component families")
    components: list[Term] = []
    cod: list[Sort] = []
    for k, f in enumerate(families):
        if f.domain != dom:
            raise DomainMismatch(f"family {k} has domain {f.domain!r}, expected {dom!r}")
        components.extend(f.components)
        cod.extend(f.codomain)
    return TermFamily(dom, Word(cod), components)


def family_tuple(families: Sequence[TermFamily], domain: Word | None = None) -> TermFamily:
    """Tupling of single-component families over one shared domain."""
    for k, f in enumerate(families):
        if len(f.codomain) != 1:
            raise ArityMismatch(f"tupling component {k} must have a one-letter codomain")
    return family_concat(families, domain=domain)


def family_compose(outer: TermFamily, inner: TermFamily,
                   depth_limit: int = DEFAULT_DEPTH_LIMIT) -> TermFamily:
    """outer after inner: substitute the inner family into each outer
    component.  outer: x -> w composed with inner: u -> x gives u -> w."""
    if outer.domain != inner.codomain:
        raise DomainMismatch(
            f"cannot compose {outer.domain!r} -> {outer.codomain!r} after {inner.domain!r} -> {inner.codomain!r}")
    return TermFamily(inner.domain, outer.codomain,
                      [substitute(c, inner, depth_limit=depth_limit) for c in outer.components])


def family_parallel(families: Sequence[TermFamily]) -> TermFamily:
    """Juxtaposition: domains and codomains concatenate, components are
    re-indexed into the concatenated domain by block offset."""
    dom = Word()
    cod = Word()
    for f in families:
        dom = concat(dom, f.domain)
        cod = concat(cod, f.codomain)
    ctx = canonical_context(dom)
    components: list[Term] = []
    offset = 0
    for f in families:
        src = canonical_context(f.domain)
        images = {src.var_at(i): Var(ctx, ctx.var_at(offset + i)) for i in range(len(src))}
        memo: dict[int, Term] = {}
        components.extend(_substitute(c, images, ctx, memo, DEFAULT_DEPTH_LIMIT)
                          for c in f.components)
        offset += len(f.domain)
    return TermFamily(dom, cod, components)


# ---------------------------------------------------------------------------
# formal clone terms and their evaluation


@lru_cache(maxsize=None)
def classify_clone_op(op: OperationSymbol):
    """Recognize a generated clone operation from its name prefix and sorts.

    Returns one of
      ("pi", w, i)            projection, Hall flavor
      ("xi", u, w, s)         substitution operator
      ("bpi", w, i)           projection, theory flavor
      ("tup", u, w)           finite tupling
      ("comp", u, x, w)       composition
    """
    name = op.name
    if name.startswith("pi_"):
        try:
            i = int(name[3:].split("_", 1)[0])
        except ValueError:
            raise TypingError(f"malformed projection name {name!r}") from None
        decoded = parse_clone_sort(op.coarity)
        if decoded is None or op.arity != Word():
            raise TypingError(f"projection {name!r} has unexpected sorts")
        if decoded[0] == "hall":
            return ("pi", decoded[1], i)
        u, w = decoded[1], decoded[2]
        if len(w) != 1:
            raise TypingError(f"projection {name!r} must land in a one-letter codomain")
        return ("bpi", u, i)
    if name.startswith("xi_"):
        first = parse_clone_sort(op.arity[0]) if op.arity else None
        out = parse_clone_sort(op.coarity)
        if not first or not out or first[0] != "hall" or out[0] != "hall":
            raise TypingError(f"substitution operator {name!r} has unexpected sorts")
        w, s = first[1], first[2]
        u = out[1]
        return ("xi", u, w, s)
    if name.startswith("tup_"):
        out = parse_clone_sort(op.coarity)
        if not out or out[0] != "benabou":
            raise TypingError(f"tupling {name!r} has unexpected sorts")
        return ("tup", out[1], out[2])
    if name.startswith("comp_"):
        if len(op.arity) != 2:
            raise TypingError(f"composition {name!r} must be binary")
        first = parse_clone_sort(op.arity[0])
        second = parse_clone_sort(op.arity[1])
        if not first or not second or first[0] != "benabou" or second[0] != "benabou":
            raise TypingError(f"composition {name!r} has unexpected sorts")
        u, x = first[1], first[2]
        x2, w = second[1], second[2]
        if x != x2:
            raise TypingError(f"composition {name!r} has mismatched middle words")
        return ("comp", u, x, w)
    raise TypingError(f"operation {name!r} is not a generated clone operation")


class CloneEnv:
    """An assignment of term families to clone variables over a base
    signature; the realization data for formal clone terms."""

    __slots__ = ("base", "_map")

    def __init__(self, base: Signature, assignment: Mapping[Variable, TermFamily]):
        self.base = base
        m: dict[Variable, TermFamily] = {}
        for var, fam in assignment.items():
            decoded = parse_clone_sort(var.sort)
            if decoded is None:
                raise TypingError(f"environment variable {var!r} does not have a clone sort")
            if decoded[0] == "hall":
                want_dom, want_cod = decoded[1], Word.of(decoded[2])
            else:
                want_dom, want_cod = decoded[1], decoded[2]
            if fam.domain != want_dom or fam.codomain != want_cod:
                raise SortMismatch(
                    f"family for {var!r} has type {fam.domain!r} -> {fam.codomain!r}, "
                    f"expected {want_dom!r} -> {want_cod!r}")
            m[var] = fam
        self._map = m

    def __getitem__(self, var: Variable) -> TermFamily:
        try:
            return self._map[var]
        except KeyError:
            raise UnboundCloneVariable(f"no family bound for clone variable {var!r}") from None

    def __contains__(self, var: Variable) -> bool:
        return var in self._map


def eval_hall(term: Term, env: CloneEnv) -> Term:
    """Evaluate a formal clone term over a projection/substitution signature
    in the clone of term families: the unique-homomorphism image."""
    if isinstance(term, Var):
        fam = env[term.variable]
        if len(fam.codomain) != 1:
            raise SortMismatch(f"variable {term.variable!r} is not of a one-output clone sort")
        return fam.components[0]
    kind = classify_clone_op(term.op)
    if kind[0] == "pi":
        _, w, i = kind
        ctx = canonical_context(w)
        return Var(ctx, ctx.var_at(i))
    if kind[0] != "xi":
        raise TypingError(f"operation {term.op.name!r} is not a projection/substitution operation")
    _, u, w, s = kind
    head = eval_hall(term.args[0], env)
    inner = [eval_hall(a, env) for a in term.args[1:]]
    fam = TermFamily(u, w, inner)
    return substitute(head, fam)


def eval_benabou(term: Term, env: CloneEnv) -> TermFamily:
    """Evaluate a formal clone term over a projection/tupling/composition
    signature in the clone of term families."""
    if isinstance(term, Var):
        return env[term.variable]
    kind = classify_clone_op(term.op)
    if kind[0] == "bpi":
        _, u, i = kind
        return family_project(u, i)
    if kind[0] == "tup":
        _, u, w = kind
        return family_tuple([eval_benabou(a, env) for a in term.args], domain=u)
    if kind[0] == "comp":
        inner = eval_benabou(term.args[0], env)
        outer = eval_benabou(term.args[1], env)
        return family_compose(outer, inner)
    raise TypingError(f"operation {term.op.name!r} is not a theory operation")


def _clone_flavor_of(sort: Sort) -> str:
    decoded = parse_clone_sort(sort)
    if decoded is None:
        raise TypingError(f"sort {sort} is not a clone sort")
    return decoded[0]


@lru_cache(maxsize=None)
def generic_environment(context: SortedSet) -> CloneEnv:
    """Fresh generator families g0, g1, ... for the clone variables of a
    context, in context order; the base signature collects the generators.
    Cached per context: repeated word-problem queries over one context reuse
    the same generator signature."""
    base_sorts: dict[Sort, None] = {}
    ops: list[OperationSymbol] = []
    assignment: dict[Variable, TermFamily] = {}
    for k, var in enumerate(context):
        decoded = parse_clone_sort(var.sort)
        if decoded is None:
            raise TypingError(f"context variable {var!r} does not have a clone sort")
        if decoded[0] == "hall":
            dom, cod = decoded[1], Word.of(decoded[2])
        else:
            dom, cod = decoded[1], decoded[2]
        for s in dom:
            base_sorts[s] = None
        for s in cod:
            base_sorts[s] = None
        ctx = canonical_context(dom)
        comps = []
        for i, s in enumerate(cod):
            g = OperationSymbol(f"g{k}_{i}", dom, s)
            ops.append(g)
            comps.append(App(g, [Var(ctx, v) for v in ctx], context=ctx))
        assignment[var] = TermFamily(dom, cod, comps)
    base = Signature(base_sorts, ops)
    return CloneEnv(base, assignment)


def eval_in_free_clone(term: Term, env: CloneEnv) -> TermFamily:
    """Uniform evaluation: one-output answers are wrapped as families."""
    flavor = _clone_flavor_of(term.sort)
    if flavor == "hall":
        out = eval_hall(term, env)
        return TermFamily(out.context.word(), Word.of(out.sort), [out])
    return eval_benabou(term, env)


def equal_mod_free_theory(t1: Term, t2: Term, flavor: str | None = None) -> bool:
    """Decide equality of two clone terms modulo the generated projection
    and substitution laws, by evaluation under a generic environment.

    Freeness of the clone of term families makes this sound and complete.
    """
    if t1.sort != t2.sort:
        raise SortMismatch(f"clone terms have different sorts {t1.sort} and {t2.sort}")
    if not (t1.context is t2.context or t1.context == t2.context):
        raise ContextMismatch("clone terms live in different contexts")
    if flavor is not None and _clone_flavor_of(t1.sort) != flavor:
        raise SortMismatch(f"clone term sort {t1.sort} is not of flavor {flavor!r}")
    env = generic_environment(t1.context)
    return eval_in_free_clone(t1, env) == eval_in_free_clone(t2, env)
