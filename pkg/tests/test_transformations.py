import pytest

from conftest import (
    S,
    boolean_ring_signature,
    gd_signature,
    group_division_algebras,
    power_polyderivator,
    rand_algebra,
    rand_signature,
    rand_term,
    selection_transformation,
    z2_ring,
    z2xz2_ring,
)
from msalg.algebras import check_homomorphism, realize_general, satisfies, valuations
from msalg.clones import family_compose
from msalg.errors import EndpointMismatch, ModelNotAModel
from msalg.kernel import Sort, SortedSet, Variable, Word, canonical_context, coproduct_dagger
from msalg.morphisms import (
    compose_polyderivators,
    identity_polyderivator,
    reduct_algebra,
    translate_general,
)
from msalg.speclang import Specification
from msalg.terms import App, Equation, GeneralTerm, TermFamily, Var, kleisli_compose
from msalg.transformations import (
    Proved,
    Refuted,
    Transformation,
    VerifiedOnModels,
    check_transformation_mod,
    check_transformation_strict,
    horizontal_compose,
    identity_transformation,
    induced_homomorphism,
    transformation_on_context,
    vertical_compose,
)

BR = boolean_ring_signature()


def test_identity_transformation_is_strict(rng):
    for p in (1, 2, 3):
        tr = identity_transformation(power_polyderivator(BR, p))
        ok, witness = check_transformation_strict(tr)
        assert ok and witness is None


def test_selection_transformations_are_strict():
    for p, q, f in ((2, 1, [0]), (2, 3, [1, 0, 1]), (3, 2, [2, 0]), (1, 1, [0])):
        tr = selection_transformation(BR, p, q, f)
        ok, _ = check_transformation_strict(tr)
        assert ok


def test_perturbed_selection_fails_with_witness():
    tr = selection_transformation(BR, 2, 2, [0, 1])
    ctx = canonical_context(tr.source_pd.phi(S))
    v0 = Var(ctx, ctx.var_at(0))
    bad = dict(tr.xi)
    bad[S] = TermFamily(tr.source_pd.phi(S), tr.target_pd.phi(S),
                        [App(BR.op("neg"), [v0]), Var(ctx, ctx.var_at(1))])
    perturbed = Transformation(tr.source_pd, tr.target_pd, bad)
    ok, witness = check_transformation_strict(perturbed)
    assert not ok
    assert witness in BR.ops  # a named operation is reported


def test_strictness_extends_to_families(rng):
    # once the generating squares commute, every term family intertwines
    tr = selection_transformation(BR, 3, 2, [2, 0])
    d, e = tr.source_pd, tr.target_pd
    from msalg.morphisms import translate_family

    for _ in range(25):
        u = Word([S] * rng.randrange(1, 3))
        w = Word([S] * rng.randrange(1, 3))
        from conftest import rand_family
        fam = rand_family(BR, u, w, 3, rng)
        left = family_compose(tr.word_component(w), translate_family(d, fam))
        right = family_compose(translate_family(e, fam), tr.word_component(u))
        assert left == right


def test_vertical_composition_and_units(rng):
    f1 = selection_transformation(BR, 3, 2, [1, 0])
    f2 = selection_transformation(BR, 2, 2, [1, 1])
    composite = vertical_compose(f2, f1)
    ok, _ = check_transformation_strict(composite)
    assert ok
    # selection composed with selection is the composed selection
    expected = selection_transformation(BR, 3, 2, [0, 0])  # f1[f2[nu]]
    assert composite.xi == expected.xi
    ident_src = identity_transformation(f1.source_pd)
    ident_tgt = identity_transformation(f1.target_pd)
    assert vertical_compose(f1, ident_src).xi == f1.xi
    assert vertical_compose(ident_tgt, f1).xi == f1.xi
    with pytest.raises(EndpointMismatch):
        vertical_compose(f1, f1)


def test_horizontal_composition_and_interchange(rng):
    xi = selection_transformation(BR, 2, 3, [1, 0, 0])
    chi = selection_transformation(BR, 3, 2, [2, 1])
    both = horizontal_compose(chi, xi)
    ok, _ = check_transformation_strict(both)
    assert ok
    # identity * identity = identity of the composite
    d = power_polyderivator(BR, 2)
    h = power_polyderivator(BR, 3)
    ids = horizontal_compose(identity_transformation(h), identity_transformation(d))
    assert ids.xi == identity_transformation(compose_polyderivators(h, d)).xi
    # the law of Godement on selections
    xi1 = selection_transformation(BR, 2, 3, [0, 1, 1])
    xi2 = selection_transformation(BR, 3, 2, [2, 0])
    chi1 = selection_transformation(BR, 2, 2, [1, 0])
    chi2 = selection_transformation(BR, 2, 3, [0, 0, 1])
    left = vertical_compose(horizontal_compose(chi2, xi2), horizontal_compose(chi1, xi1))
    right = horizontal_compose(vertical_compose(chi2, chi1), vertical_compose(xi2, xi1))
    assert left.xi == right.xi


def test_induced_homomorphism_identity():
    z2 = z2_ring()
    ident = identity_transformation(identity_polyderivator(BR))
    maps = induced_homomorphism(ident, z2)
    assert maps[S] == {("0",): ("0",), ("1",): ("1",)}


def test_induced_homomorphism_selection():
    z2 = z2_ring()
    tr = selection_transformation(BR, 2, 2, [1, 0])
    maps = induced_homomorphism(tr, z2)
    assert maps[S][("0", "1")] == ("1", "0")
    left = reduct_algebra(tr.source_pd, z2)
    right = reduct_algebra(tr.target_pd, z2)
    assert check_homomorphism(maps, left, right)


def test_induced_homomorphism_naturality(rng):
    # xi^C composed with the mapped valuation equals mapping after xi^B
    tr = selection_transformation(BR, 2, 1, [1])
    b = z2_ring()
    c = z2xz2_ring()
    # a ring homomorphism from Z2 into Z2xZ2: the diagonal
    f = {S: {e: e + e for e in b.carriers[S]}}
    assert check_homomorphism(f, b, c)
    xi_b = induced_homomorphism(tr, b)
    xi_c = induced_homomorphism(tr, c)
    for row in reduct_algebra(tr.source_pd, b).carriers[S]:
        mapped_row = tuple(f[S][x] for x in row)
        assert xi_c[S][mapped_row] == tuple(f[S][x] for x in xi_b[S][row])


def test_induced_functoriality(rng):
    z2 = z2_ring()
    f1 = selection_transformation(BR, 3, 2, [1, 0])
    f2 = selection_transformation(BR, 2, 2, [1, 1])
    composite = vertical_compose(f2, f1)
    h1 = induced_homomorphism(f1, z2)
    h2 = induced_homomorphism(f2, z2)
    h12 = induced_homomorphism(composite, z2)
    for row, out in h12[S].items():
        assert out == h2[S][h1[S][row]]


def test_transformation_on_context_identity():
    tr = identity_transformation(power_polyderivator(BR, 2))
    ctx = SortedSet([Variable("x", S)])
    out = transformation_on_context(tr, ctx)
    assert out == GeneralTerm.identity(coproduct_dagger(tr.source_pd.phi, ctx))


def test_transformation_on_context_naturality(rng):
    # the square against translated general terms commutes
    tr = selection_transformation(BR, 2, 2, [1, 0])
    d, e = tr.source_pd, tr.target_pd
    xs = SortedSet([Variable("x0", S), Variable("x1", S)])
    ys = SortedSet([Variable("y0", S)])
    for _ in range(20):
        p = GeneralTerm(xs, ys, {ys.var_at(0): rand_term(BR, xs, S, 3, rng)})
        left = kleisli_compose(transformation_on_context(tr, ys), translate_general(d, p))
        right = kleisli_compose(translate_general(e, p), transformation_on_context(tr, xs))
        assert left == right


def test_lemma9_compatibility(rng):
    # realizing through the context 2-cell equals post-composing with the
    # induced map, through the valuation bijections
    from msalg.morphisms import theta_valuation

    tr = selection_transformation(BR, 2, 2, [1, 0])
    z2 = z2_ring()
    ctx = SortedSet([Variable("x0", S), Variable("x1", S)])
    xi_ctx = transformation_on_context(tr, ctx)
    co_phi = xi_ctx.source
    co_psi = xi_ctx.target
    induced = induced_homomorphism(tr, z2)
    for val in valuations(z2, co_phi):
        through_terms = realize_general(z2, xi_ctx)(val)
        grouped = theta_valuation(tr.source_pd, ctx, co_phi, val)
        lifted = {x: induced[S][grouped[x]] for x in ctx}
        assert theta_valuation(tr.target_pd, ctx, co_psi, through_terms) == lifted


def test_check_mod_strict_is_proved():
    tr = selection_transformation(BR, 2, 2, [1, 0])
    empty_spec = Specification("BR", BR, {})
    assert isinstance(check_transformation_mod(tr, empty_spec), Proved)


def test_check_mod_stone(rng):
    # from tests/fixtures/stone.spec shapes, programmatically
    from test_morphisms import stone_d
    from msalg.morphisms import lift_derivor

    d = stone_d()
    ctx1 = canonical_context(Word.of(S))
    e_images = {}
    BA = d.source
    join, meet, compl = BA.op("join"), BA.op("meet"), BA.op("compl")
    ctx2 = canonical_context(Word.of(S, S))
    v0, v1 = Var(ctx2, ctx2.var_at(0)), Var(ctx2, ctx2.var_at(1))
    from msalg.morphisms import mk_derivor
    e = mk_derivor(BR, BA, {S: S}, {
        "zero": App(BA.op("zero"), [], context=canonical_context(Word())),
        "one": App(BA.op("one"), [], context=canonical_context(Word())),
        "neg": Var(ctx1, ctx1.var_at(0)),
        "add": App(join, [App(meet, [v0, App(compl, [v1])]),
                          App(meet, [App(compl, [v0]), v1])]),
        "mul": App(meet, [v0, v1]),
    })
    dcomp = compose_polyderivators(lift_derivor(d), lift_derivor(e))
    ident = identity_polyderivator(BR)
    tr = Transformation(dcomp, ident, {S: TermFamily.identity(Word.of(S))})
    axioms = _boolean_ring_axioms()
    spec = Specification("BR", BR, axioms)
    verdict = check_transformation_mod(tr, spec, [z2_ring(), z2xz2_ring()],
                                       model_names=["z2", "z2xz2"])
    assert verdict == VerifiedOnModels(2)
    # a model that is not a model is rejected loudly
    from conftest import z4_ring
    with pytest.raises(ModelNotAModel):
        check_transformation_mod(tr, spec, [z4_ring()], model_names=["z4"])


def _boolean_ring_axioms():
    ctx1 = canonical_context(Word.of(S))
    ctx2 = canonical_context(Word.of(S, S))
    ctx3 = canonical_context(Word([S] * 3))
    w0 = Var(ctx1, ctx1.var_at(0))
    v0, v1 = Var(ctx2, ctx2.var_at(0)), Var(ctx2, ctx2.var_at(1))
    u0, u1, u2 = (Var(ctx3, v) for v in ctx3)
    add, mul, zero, one, neg = (BR.op(n) for n in ("add", "mul", "zero", "one", "neg"))
    eqs = {
        "add_assoc": Equation.of_terms(App(add, [App(add, [u0, u1]), u2]),
                                       App(add, [u0, App(add, [u1, u2])])),
        "add_comm": Equation.of_terms(App(add, [v0, v1]), App(add, [v1, v0])),
        "add_zero": Equation.of_terms(App(add, [w0, App(zero, [], context=ctx1)]), w0),
        "add_self": Equation.of_terms(App(add, [w0, w0]), App(zero, [], context=ctx1)),
        "neg_id": Equation.of_terms(App(neg, [w0]), w0),
        "mul_assoc": Equation.of_terms(App(mul, [App(mul, [u0, u1]), u2]),
                                       App(mul, [u0, App(mul, [u1, u2])])),
        "mul_comm": Equation.of_terms(App(mul, [v0, v1]), App(mul, [v1, v0])),
        "mul_one": Equation.of_terms(App(mul, [w0, App(one, [], context=ctx1)]), w0),
        "distl": Equation.of_terms(App(mul, [u0, App(add, [u1, u2])]),
                                   App(add, [App(mul, [u0, u1]), App(mul, [u0, u2])])),
        "idem": Equation.of_terms(App(mul, [w0, w0]), w0),
    }
    return eqs


def test_check_mod_refuted():
    # an honestly false square gets a witness model: replacing a component
    # by v0+v0 breaks the square at the constant one, since 1+1 = 0 in Z2
    tr = selection_transformation(BR, 2, 2, [1, 0])
    ctx = canonical_context(tr.source_pd.phi(S))
    v0 = Var(ctx, ctx.var_at(0))
    bad = dict(tr.xi)
    bad[S] = TermFamily(tr.source_pd.phi(S), tr.target_pd.phi(S),
                        [App(BR.op("add"), [v0, v0]), Var(ctx, ctx.var_at(1))])
    perturbed = Transformation(tr.source_pd, tr.target_pd, bad)
    spec = Specification("BR", BR, _boolean_ring_axioms())
    verdict = check_transformation_mod(perturbed, spec, [z2_ring()], model_names=["z2"])
    assert isinstance(verdict, Refuted)
    assert verdict.model == "z2"
    assert verdict.operation in BR.ops
