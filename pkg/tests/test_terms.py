import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import boolean_ring_signature, rand_family, rand_term, S
from msalg.errors import (
    ArityMismatch,
    ContextMismatch,
    DepthLimitExceeded,
    NonCanonicalContext,
    SortMismatch,
    UnknownVariable,
)
from msalg.kernel import Sort, SortedSet, Variable, Word, canonical_context
from msalg.terms import (
    App,
    Equation,
    GeneralTerm,
    TermFamily,
    Var,
    family_from_general,
    general_from_family,
    kleisli_compose,
    mk_app,
    mk_var,
    substitute,
)

T = Sort("t")
BR = boolean_ring_signature()
ADD = BR.op("add")
MUL = BR.op("mul")
NEG = BR.op("neg")
ONE = BR.op("one")


def test_mk_var_examples():
    ctx = canonical_context(Word.of(S, T))
    assert mk_var(ctx, 1).sort == T
    named = SortedSet([Variable("x", S)])
    assert mk_var(named, "x").variable.name == "x"
    with pytest.raises(UnknownVariable):
        mk_var(canonical_context(Word()), 0)


def test_mk_app_examples():
    ctx = canonical_context(Word.of(S, S))
    v0, v1 = mk_var(ctx, 0), mk_var(ctx, 1)
    t = mk_app(MUL, [v0, v1])
    assert t.sort == S and t.depth == 2
    with pytest.raises(ArityMismatch):
        mk_app(MUL, [v0])
    tctx = canonical_context(Word.of(T))
    with pytest.raises(SortMismatch):
        mk_app(NEG, [mk_var(tctx, 0)])
    with pytest.raises(ContextMismatch):
        mk_app(MUL, [v0, mk_var(canonical_context(Word.of(S, S, S)), 0)])


def test_depth_limit():
    ctx = canonical_context(Word.of(S))
    t = mk_var(ctx, 0)
    for _ in range(10):
        t = mk_app(NEG, [t])
    with pytest.raises(DepthLimitExceeded):
        mk_app(NEG, [t], depth_limit=5)


def test_substitute_projection_and_identity():
    w = Word.of(S, S)
    ctx = canonical_context(w)
    rng = random.Random(1)
    fam = rand_family(BR, Word.of(S, S, S), w, 2, rng)
    # a bare variable picks out the family component
    for i in range(2):
        assert substitute(mk_var(ctx, i), fam) == fam.components[i]
    # the identity family leaves any term unchanged
    t = rand_term(BR, ctx, S, 3, rng)
    assert substitute(t, TermFamily.identity(w)) == t


def test_substitute_renaming():
    ctx = canonical_context(Word.of(S, S))
    v0, v1 = mk_var(ctx, 0), mk_var(ctx, 1)
    swap = TermFamily(Word.of(S, S), Word.of(S, S), [v1, v0])
    assert substitute(mk_app(ADD, [v0, v1]), swap) == mk_app(ADD, [v1, v0])


def test_substitute_context_mismatch():
    ctx = canonical_context(Word.of(S, S))
    fam = TermFamily.identity(Word.of(S))
    with pytest.raises(ContextMismatch):
        substitute(mk_var(ctx, 0), fam)


def test_substitute_associativity_random(rng):
    # substituting twice equals substituting the composed family (the
    # associativity law of the clone, literally on terms)
    for _ in range(60):
        u = Word([S] * rng.randrange(1, 4))
        v = Word([S] * rng.randrange(1, 4))
        w = Word([S] * rng.randrange(1, 4))
        p = rand_term(BR, canonical_context(w), S, 3, rng)
        q = rand_family(BR, v, w, 2, rng)
        r = rand_family(BR, u, v, 2, rng)
        composed = TermFamily(u, w, [substitute(c, r) for c in q.components])
        assert substitute(substitute(p, q), r) == substitute(p, composed)


def test_general_round_trip(rng):
    for _ in range(30):
        u = Word([S] * rng.randrange(0, 3))
        w = Word([S] * rng.randrange(0, 3))
        fam = rand_family(BR, u, w, 2, rng) if len(w) else TermFamily(u, w, [])
        assert family_from_general(general_from_family(fam)) == fam


def test_family_from_general_requires_canonical():
    x = Variable("x", S)
    ctx = SortedSet([x])
    ident = GeneralTerm.identity(ctx)
    with pytest.raises(NonCanonicalContext):
        family_from_general(ident)


def test_empty_codomain_family():
    fam = TermFamily(Word.of(S), Word(), [])
    g = general_from_family(fam)
    assert len(g.target) == 0


def _rand_general(rng, src_ctx, tgt_ctx, depth=2):
    return GeneralTerm(src_ctx, tgt_ctx,
                       {y: rand_term(BR, src_ctx, y.sort, depth, rng) for y in tgt_ctx})


def test_kleisli_identity_laws(rng):
    xs = SortedSet([Variable("x0", S), Variable("x1", S)])
    ys = SortedSet([Variable("y0", S)])
    p = _rand_general(rng, xs, ys)
    assert kleisli_compose(p, GeneralTerm.identity(xs)) == p
    assert kleisli_compose(GeneralTerm.identity(ys), p) == p


def test_kleisli_hand_example():
    xs = SortedSet([Variable("x0", S), Variable("x1", S)])
    ys = SortedSet([Variable("y0", S), Variable("y1", S)])
    zs = SortedSet([Variable("z", S)])
    y0, y1 = ys.variables
    q = GeneralTerm(ys, zs, {zs.var_at(0): App(MUL, [Var(ys, y0), Var(ys, y1)])})
    p = GeneralTerm(xs, ys, {
        y0: App(ADD, [Var(xs, xs.var_at(0)), Var(xs, xs.var_at(1))]),
        y1: Var(xs, xs.var_at(0)),
    })
    out = kleisli_compose(q, p)
    expected = App(MUL, [App(ADD, [Var(xs, xs.var_at(0)), Var(xs, xs.var_at(1))]),
                         Var(xs, xs.var_at(0))])
    assert out(zs.var_at(0)) == expected


def test_kleisli_associativity(rng):
    xs = SortedSet([Variable("x0", S), Variable("x1", S)])
    ys = SortedSet([Variable("y0", S), Variable("y1", S)])
    zs = SortedSet([Variable("z0", S)])
    ws = SortedSet([Variable("w0", S), Variable("w1", S)])
    for _ in range(40):
        p = _rand_general(rng, xs, ys, 3)
        q = _rand_general(rng, ys, zs, 3)
        r = _rand_general(rng, zs, ws, 3)
        assert kleisli_compose(kleisli_compose(r, q), p) == \
            kleisli_compose(r, kleisli_compose(q, p))


def test_kleisli_context_mismatch(rng):
    xs = SortedSet([Variable("x0", S)])
    ys = SortedSet([Variable("y0", S)])
    p = _rand_general(rng, xs, ys)
    with pytest.raises(ContextMismatch):
        kleisli_compose(p, p)


def test_equation_of_terms_checks():
    ctx = canonical_context(Word.of(S, S))
    v0 = mk_var(ctx, 0)
    other = mk_var(canonical_context(Word.of(S)), 0)
    with pytest.raises(ContextMismatch):
        Equation.of_terms(v0, other)


def test_term_equality_is_structural():
    ctx = canonical_context(Word.of(S, S))
    a = mk_app(ADD, [mk_var(ctx, 0), mk_var(ctx, 1)])
    b = mk_app(ADD, [mk_var(ctx, 0), mk_var(ctx, 1)])
    assert a == b and hash(a) == hash(b)
    assert a != mk_app(ADD, [mk_var(ctx, 1), mk_var(ctx, 0)])


# hypothesis strategies for small term shapes over the ring signature


@st.composite
def _terms_over(draw, n_vars):
    ctx = canonical_context(Word([S] * n_vars))
    seed = draw(st.integers(min_value=0, max_value=10 ** 6))
    depth = draw(st.integers(min_value=1, max_value=4))
    return rand_term(BR, ctx, S, depth, random.Random(seed))


@settings(max_examples=60, deadline=None)
@given(_terms_over(2), st.integers(0, 10 ** 6), st.integers(1, 3))
def test_substitution_never_captures(term, seed, n):
    # images live over a fresh context, so the result context is exactly the
    # family's domain and the original context never leaks through
    rng2 = random.Random(seed)
    fam = rand_family(BR, Word([S] * n), Word.of(S, S), 2, rng2)
    out = substitute(term, fam)
    assert out.context == canonical_context(fam.domain)


@settings(max_examples=40, deadline=None)
@given(_terms_over(2), st.integers(0, 10 ** 6))
def test_identity_substitution_property(term, seed):
    assert substitute(term, TermFamily.identity(Word.of(S, S))) == term
