"""Shared fixtures: concrete signatures and algebras, and seeded random
generators for terms, families, algebras, and derived morphisms."""

from __future__ import annotations

import itertools
import random
from pathlib import Path

import pytest

from msalg.algebras import FiniteAlgebra
from msalg.kernel import OperationSymbol, Signature, Sort, SortMap, Word, canonical_context
from msalg.morphisms import Polyderivator
from msalg.terms import App, Term, TermFamily, Var
from msalg.transformations import Transformation

FIXTURES = Path(__file__).parent / "fixtures"

S = Sort("s")
T = Sort("t")


# ---------------------------------------------------------------------------
# Boolean rings and Boolean algebras


def boolean_ring_signature() -> Signature:
    return Signature([S], [
        OperationSymbol("zero", Word(), S),
        OperationSymbol("one", Word(), S),
        OperationSymbol("neg", Word.of(S), S),
        OperationSymbol("add", Word.of(S, S), S),
        OperationSymbol("mul", Word.of(S, S), S),
    ])


def boolean_algebra_signature() -> Signature:
    return Signature([S], [
        OperationSymbol("zero", Word(), S),
        OperationSymbol("one", Word(), S),
        OperationSymbol("compl", Word.of(S), S),
        OperationSymbol("join", Word.of(S, S), S),
        OperationSymbol("meet", Word.of(S, S), S),
    ])


def z2_ring() -> FiniteAlgebra:
    sig = boolean_ring_signature()
    e = ("0", "1")
    return FiniteAlgebra(sig, {S: e}, {
        "zero": {(): "0"},
        "one": {(): "1"},
        "neg": {(a,): a for a in e},
        "add": {(a, b): str(int(a) ^ int(b)) for a in e for b in e},
        "mul": {(a, b): str(int(a) & int(b)) for a in e for b in e},
    })


def z2xz2_ring() -> FiniteAlgebra:
    sig = boolean_ring_signature()
    e = tuple(a + b for a in "01" for b in "01")
    xor = lambda a, b: "".join(str(int(x) ^ int(y)) for x, y in zip(a, b))
    band = lambda a, b: "".join(str(int(x) & int(y)) for x, y in zip(a, b))
    return FiniteAlgebra(sig, {S: e}, {
        "zero": {(): "00"},
        "one": {(): "11"},
        "neg": {(a,): a for a in e},
        "add": {(a, b): xor(a, b) for a in e for b in e},
        "mul": {(a, b): band(a, b) for a in e for b in e},
    })


def z4_ring() -> FiniteAlgebra:
    sig = boolean_ring_signature()
    e = tuple(str(i) for i in range(4))
    return FiniteAlgebra(sig, {S: e}, {
        "zero": {(): "0"},
        "one": {(): "1"},
        "neg": {(a,): str((-int(a)) % 4) for a in e},
        "add": {(a, b): str((int(a) + int(b)) % 4) for a in e for b in e},
        "mul": {(a, b): str((int(a) * int(b)) % 4) for a in e for b in e},
    })


# ---------------------------------------------------------------------------
# groups of order at most six, presented by division


def gd_signature() -> Signature:
    return Signature([S], [
        OperationSymbol("one", Word(), S),
        OperationSymbol("div", Word.of(S, S), S),
    ])


def _gd_algebra(elems, div) -> FiniteAlgebra:
    sig = gd_signature()
    return FiniteAlgebra(sig, {S: tuple(elems)}, {
        "one": {(): elems[0]},
        "div": {(a, b): div(a, b) for a in elems for b in elems},
    })


def group_division_algebras() -> dict[str, FiniteAlgebra]:
    out: dict[str, FiniteAlgebra] = {}
    for n in (1, 2, 3, 4, 5, 6):
        elems = [f"g{i}" for i in range(n)]
        out[f"c{n}"] = _gd_algebra(elems, lambda a, b, n=n: f"g{(int(a[1:]) - int(b[1:])) % n}")
    klein = ["e", "a", "b", "c"]
    idx = {e: i for i, e in enumerate(klein)}
    out["v4"] = _gd_algebra(klein, lambda a, b: klein[idx[a] ^ idx[b]])
    perms = sorted(itertools.permutations(range(3)))
    names = {p: f"p{i}" for i, p in enumerate(perms)}
    by_name = {v: k for k, v in names.items()}

    def mul(p, q):
        return tuple(p[q[i]] for i in range(3))

    def inv(p):
        out3 = [0] * 3
        for i, v in enumerate(p):
            out3[v] = i
        return tuple(out3)

    out["s3"] = _gd_algebra([names[p] for p in perms],
                            lambda a, b: names[mul(by_name[a], inv(by_name[b]))])
    return out


# ---------------------------------------------------------------------------
# random generators (all deterministic through a seeded Random)


def rand_term(sig: Signature, ctx, sort: Sort, depth: int, rng: random.Random) -> Term:
    """A random well-sorted term; falls back to variables and constants when
    the depth budget runs out."""
    vars_of_sort = [v for v in ctx if v.sort == sort]
    constants = [op for op in sig.ops.values() if op.coarity == sort and len(op.arity) == 0]
    leaves = [("v", v) for v in vars_of_sort] + [("c", op) for op in constants]
    if depth <= 1:
        if not leaves:
            raise ValueError(f"no leaf of sort {sort} available")
        kind, item = leaves[rng.randrange(len(leaves))]
        return Var(ctx, item) if kind == "v" else App(item, [], context=ctx)
    candidates = [op for op in sig.ops.values() if op.coarity == sort]
    if leaves and (not candidates or rng.random() < 0.3):
        kind, item = leaves[rng.randrange(len(leaves))]
        return Var(ctx, item) if kind == "v" else App(item, [], context=ctx)
    op = candidates[rng.randrange(len(candidates))]
    args = [rand_term(sig, ctx, a, depth - 1, rng) for a in op.arity]
    return App(op, args, context=ctx)


def rand_family(sig: Signature, domain: Word, codomain: Word, depth: int,
                rng: random.Random) -> TermFamily:
    ctx = canonical_context(domain)
    return TermFamily(domain, codomain,
                      [rand_term(sig, ctx, s, depth, rng) for s in codomain])


def rand_algebra(sig: Signature, sizes, rng: random.Random) -> FiniteAlgebra:
    """Random total tables over carriers named a0, a1, ... per sort."""
    carriers = {s: tuple(f"{s.name}{i}" for i in range(sizes[s])) for s in sig.sorts}
    tables = {}
    for name, op in sig.ops.items():
        out = carriers[op.coarity]
        tables[name] = {row: out[rng.randrange(len(out))]
                        for row in itertools.product(*(carriers[a] for a in op.arity))}
    return FiniteAlgebra(sig, carriers, tables)


def rand_signature(prefix: str, sorts, n_ops: int, rng: random.Random,
                   max_arity: int = 2) -> Signature:
    """A random signature carrying one constant per sort (so every sort is
    inhabited over every context)."""
    sorts = tuple(sorts)
    ops = [OperationSymbol(f"{prefix}k{s.name}", Word(), s) for s in sorts]
    for i in range(n_ops):
        arity = Word(sorts[rng.randrange(len(sorts))]
                     for _ in range(rng.randrange(1, max_arity + 1)))
        coarity = sorts[rng.randrange(len(sorts))]
        ops.append(OperationSymbol(f"{prefix}f{i}", arity, coarity))
    return Signature(sorts, ops)


def rand_polyderivator(source: Signature, target: Signature, rng: random.Random,
                       max_image_len: int = 2, depth: int = 2) -> Polyderivator:
    tgt_sorts = tuple(target.sorts)
    phi_map = {}
    for s in source.sorts:
        length = rng.randrange(0, max_image_len + 1)
        phi_map[s] = Word(tgt_sorts[rng.randrange(len(tgt_sorts))] for _ in range(length))
    phi = SortMap(source.sorts, target.sorts, phi_map)
    images = {}
    for name, op in source.ops.items():
        images[name] = rand_family(target, phi.sharp(op.arity), phi(op.coarity), depth, rng)
    return Polyderivator(source, target, phi, images)


# ---------------------------------------------------------------------------
# direct-power morphisms and coordinate selections


def power_polyderivator(sig: Signature, p: int) -> Polyderivator:
    """Each sort maps to p copies of itself; each operation to p diagonal
    copies with interleaved variables."""
    phi = SortMap(sig.sorts, sig.sorts, {s: Word([s] * p) for s in sig.sorts})
    images = {}
    for name, op in sig.ops.items():
        dom = phi.sharp(op.arity)
        ctx = canonical_context(dom)
        comps = []
        for mu in range(p):
            args = [Var(ctx, ctx.var_at(alpha * p + mu)) for alpha in range(len(op.arity))]
            comps.append(App(op, args, context=ctx))
        images[name] = TermFamily(dom, phi(op.coarity), comps)
    return Polyderivator(sig, sig, phi, images)


def selection_transformation(sig: Signature, p: int, q: int, f) -> Transformation:
    """The coordinate-selection 2-cell from the p-th power morphism to the
    q-th, choosing coordinate f[nu] for each output position nu."""
    d = power_polyderivator(sig, p)
    e = power_polyderivator(sig, q)
    xi = {}
    for s in sig.sorts:
        ctx = canonical_context(d.phi(s))
        xi[s] = TermFamily(d.phi(s), e.phi(s), [Var(ctx, ctx.var_at(f[nu])) for nu in range(q)])
    return Transformation(d, e, xi)


def product_algebra(a: FiniteAlgebra, b: FiniteAlgebra) -> FiniteAlgebra:
    """Componentwise product over a shared signature."""
    assert a.signature == b.signature
    sig = a.signature
    carriers = {s: tuple(itertools.product(a.carriers[s], b.carriers[s])) for s in sig.sorts}
    tables = {}
    for name, op in sig.ops.items():
        table = {}
        for row in itertools.product(*(carriers[s] for s in op.arity)):
            left = tuple(x[0] for x in row)
            right = tuple(x[1] for x in row)
            table[row] = (a.tables[name][left], b.tables[name][right])
        tables[name] = table
    return FiniteAlgebra(sig, carriers, tables)


@pytest.fixture
def rng():
    return random.Random(0)
