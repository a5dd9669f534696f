"""Generated projection/substitution and projection/tupling/composition
specifications for a sort set, truncated at a word-length bound, together
with their concrete operation models, the equivalence between the two kinds
of model, and the explicit equivalence morphisms and 2-cells between the
two generated specifications.

Everything here is bound-explicit: a construction whose result type needs a
word longer than the bound raises BoundTooLarge instead of truncating
silently.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Mapping, Sequence

from .algebras import (
    DEFAULT_MAX_ROWS,
    FiniteAlgebra,
    FiniteOperation,
    benabou_op_apply,
    hall_op_apply,
    product_size,
    projection_operation,
    rows,
    satisfies,
)
from .clones import benabou_sort, equal_mod_free_theory, hall_sort, render_word
from .errors import BoundTooLarge, ModelNotAModel, TableTooLarge, TypingError
from .kernel import OperationSymbol, Signature, Sort, SortMap, Word, canonical_context
from .morphisms import Polyderivator, compose_polyderivators, identity_polyderivator, translate_term
from .terms import App, Equation, Term, TermFamily, Var
from .transformations import Proved, Refuted, Transformation, VerifiedOnModels


def words_up_to(sorts: Sequence[Sort], bound: int) -> tuple[Word, ...]:
    """All words of length <= bound, by length then lexicographically."""
    out: list[Word] = []
    for n in range(bound + 1):
        out.extend(Word(p) for p in itertools.product(sorts, repeat=n))
    return tuple(out)


def _mangle(w: Word) -> str:
    return str(len(w)) + "".join("_" + s.name for s in w)


def _check_base_sorts(sorts: Sequence[Sort]):
    for s in sorts:
        if "_" in s.name or "(" in s.name:
            raise TypingError(f"base sort {s.name!r} unusable for generated specs "
                              "(no underscores or brackets)")


def pi_name(w: Word, i: int) -> str:
    return f"pi_{i}__{_mangle(w)}"


def xi_name(u: Word, w: Word, s: Sort) -> str:
    return f"xi___{_mangle(u)}__{_mangle(w)}__{s.name}"


def tup_name(u: Word, w: Word) -> str:
    return f"tup___{_mangle(u)}__{_mangle(w)}"


def comp_name(u: Word, x: Word, w: Word) -> str:
    return f"comp___{_mangle(u)}__{_mangle(x)}__{_mangle(w)}"


class GeneratedSpec:
    """A generated specification: signature plus named equations, tagged
    with the flavor that makes its word problem decidable."""

    __slots__ = ("flavor", "base_sorts", "bound", "signature", "equations", "words")

    def __init__(self, flavor, base_sorts, bound, signature, equations, words):
        self.flavor = flavor
        self.base_sorts = tuple(base_sorts)
        self.bound = bound
        self.signature = signature
        self.equations = tuple(equations)
        self.words = tuple(words)

    @property
    def free_flavor(self):
        return self.flavor

    def sort_of(self, first, second) -> Sort:
        if self.flavor == "hall":
            return hall_sort(first, second)
        return benabou_sort(first, second)

    def op(self, name: str) -> OperationSymbol:
        return self.signature.op(name)

    def __repr__(self):
        return (f"GeneratedSpec({self.flavor}, |S|={len(self.base_sorts)}, bound={self.bound}, "
                f"{len(self.signature.ops)} ops, {len(self.equations)} equations)")


def _guard_bound(bound: int, n_sorts: int, equation_count: int):
    if bound < 1:
        raise BoundTooLarge("bound must be at least 1")
    if n_sorts < 1:
        raise TypingError("at least one base sort is required")
    if equation_count > 1_000_000:
        raise BoundTooLarge(
            f"generated spec for {n_sorts} sorts at bound {bound} would have "
            f"{equation_count} equations")


@lru_cache(maxsize=None)
def hall_spec(base_sorts: tuple[Sort, ...], bound: int) -> GeneratedSpec:
    """The truncated projection/substitution specification: sorts are pairs
    (word, sort); operations are all projections and substitution operators
    within the bound; equations are the projection, identity, and
    associativity laws whose sorts fit the bound."""
    _check_base_sorts(base_sorts)
    ws = words_up_to(base_sorts, bound)
    _guard_bound(bound, len(base_sorts), len(ws) ** 3 * len(base_sorts))
    sorts = [hall_sort(w, s) for w in ws for s in base_sorts]
    ops: list[OperationSymbol] = []
    for w in ws:
        for i in range(len(w)):
            ops.append(OperationSymbol(pi_name(w, i), Word(), hall_sort(w, w[i])))
    for u in ws:
        for w in ws:
            for s in base_sorts:
                arity = Word([hall_sort(w, s)] + [hall_sort(u, w[i]) for i in range(len(w))])
                ops.append(OperationSymbol(xi_name(u, w, s), arity, hall_sort(u, s)))
    sig = Signature(sorts, ops)

    equations: list[tuple[str, Equation]] = []
    for u in ws:
        for w in ws:
            if not w:
                continue
            ctx = canonical_context(Word(hall_sort(u, w[i]) for i in range(len(w))))
            vs = [Var(ctx, v) for v in ctx]
            for i in range(len(w)):
                proj = App(sig.op(pi_name(w, i)), [], context=ctx)
                lhs = App(sig.op(xi_name(u, w, w[i])), [proj] + vs)
                equations.append((f"H1__{_mangle(u)}__{_mangle(w)}__{i}",
                                  Equation.of_terms(lhs, vs[i])))
    for u in ws:
        for s in base_sorts:
            ctx = canonical_context(Word.of(hall_sort(u, s)))
            v0 = Var(ctx, ctx.var_at(0))
            projs = [App(sig.op(pi_name(u, j)), [], context=ctx) for j in range(len(u))]
            lhs = App(sig.op(xi_name(u, u, s)), [v0] + projs)
            equations.append((f"H2__{_mangle(u)}__{s.name}", Equation.of_terms(lhs, v0)))
    for u in ws:
        for v in ws:
            for w in ws:
                for s in base_sorts:
                    letters = ([hall_sort(w, s)]
                               + [hall_sort(v, w[i]) for i in range(len(w))]
                               + [hall_sort(u, v[j]) for j in range(len(v))])
                    ctx = canonical_context(Word(letters))
                    xs = [Var(ctx, x) for x in ctx]
                    head, mids, lasts = xs[0], xs[1:1 + len(w)], xs[1 + len(w):]
                    inner = App(sig.op(xi_name(v, w, s)), [head] + mids, context=ctx)
                    lhs = App(sig.op(xi_name(u, v, s)), [inner] + lasts, context=ctx)
                    outer_args = [App(sig.op(xi_name(u, v, w[i])), [mids[i]] + lasts, context=ctx)
                                  for i in range(len(w))]
                    rhs = App(sig.op(xi_name(u, w, s)), [head] + outer_args, context=ctx)
                    equations.append(
                        (f"H3__{_mangle(u)}__{_mangle(v)}__{_mangle(w)}__{s.name}",
                         Equation.of_terms(lhs, rhs)))
    return GeneratedSpec("hall", base_sorts, bound, sig, equations, ws)


@lru_cache(maxsize=None)
def benabou_spec(base_sorts: tuple[Sort, ...], bound: int) -> GeneratedSpec:
    """The truncated projection/tupling/composition specification: sorts are
    pairs of words; equations are the five theory laws within the bound."""
    _check_base_sorts(base_sorts)
    ws = words_up_to(base_sorts, bound)
    _guard_bound(bound, len(base_sorts), len(ws) ** 4)
    sorts = [benabou_sort(u, w) for u in ws for w in ws]
    ops: list[OperationSymbol] = []
    for w in ws:
        for i in range(len(w)):
            ops.append(OperationSymbol(pi_name(w, i), Word(), benabou_sort(w, Word.of(w[i]))))
    for u in ws:
        for w in ws:
            arity = Word(benabou_sort(u, Word.of(w[i])) for i in range(len(w)))
            ops.append(OperationSymbol(tup_name(u, w), arity, benabou_sort(u, w)))
    for u in ws:
        for x in ws:
            for w in ws:
                arity = Word.of(benabou_sort(u, x), benabou_sort(x, w))
                ops.append(OperationSymbol(comp_name(u, x, w), arity, benabou_sort(u, w)))
    sig = Signature(sorts, ops)

    equations: list[tuple[str, Equation]] = []
    for u in ws:
        for w in ws:
            if not w:
                continue
            ctx = canonical_context(Word(benabou_sort(u, Word.of(w[i])) for i in range(len(w))))
            vs = [Var(ctx, v) for v in ctx]
            tup = App(sig.op(tup_name(u, w)), vs, context=ctx)
            for i in range(len(w)):
                proj = App(sig.op(pi_name(w, i)), [], context=ctx)
                lhs = App(sig.op(comp_name(u, w, Word.of(w[i]))), [tup, proj])
                equations.append((f"B1__{_mangle(u)}__{_mangle(w)}__{i}",
                                  Equation.of_terms(lhs, vs[i])))
    for u in ws:
        for w in ws:
            ctx = canonical_context(Word.of(benabou_sort(u, w)))
            v0 = Var(ctx, ctx.var_at(0))
            projs = [App(sig.op(pi_name(u, j)), [], context=ctx) for j in range(len(u))]
            tup = App(sig.op(tup_name(u, u)), projs, context=ctx)
            lhs = App(sig.op(comp_name(u, u, w)), [tup, v0])
            equations.append((f"B2__{_mangle(u)}__{_mangle(w)}", Equation.of_terms(lhs, v0)))
    for u in ws:
        for w in ws:
            ctx = canonical_context(Word.of(benabou_sort(u, w)))
            v0 = Var(ctx, ctx.var_at(0))
            comps = [
                App(sig.op(comp_name(u, w, Word.of(w[i]))),
                    [v0, App(sig.op(pi_name(w, i)), [], context=ctx)])
                for i in range(len(w))
            ]
            lhs = App(sig.op(tup_name(u, w)), comps, context=ctx)
            equations.append((f"B3__{_mangle(u)}__{_mangle(w)}", Equation.of_terms(lhs, v0)))
    for w in ws:
        if not w:
            continue
        ctx = canonical_context(Word())
        proj = App(sig.op(pi_name(w, 0)), [], context=ctx)
        lhs = App(sig.op(tup_name(w, Word.of(w[0]))), [proj], context=ctx)
        equations.append((f"B4__{_mangle(w)}", Equation.of_terms(lhs, proj)))
    for u in ws:
        for x in ws:
            for w in ws:
                for y in ws:
                    ctx = canonical_context(Word.of(
                        benabou_sort(w, y), benabou_sort(x, w), benabou_sort(u, x)))
                    a, b, c = (Var(ctx, v) for v in ctx)
                    lhs = App(sig.op(comp_name(u, w, y)),
                              [App(sig.op(comp_name(u, x, w)), [c, b]), a])
                    rhs = App(sig.op(comp_name(u, x, y)),
                              [c, App(sig.op(comp_name(x, w, y)), [b, a])])
                    equations.append(
                        (f"B5__{_mangle(u)}__{_mangle(x)}__{_mangle(w)}__{_mangle(y)}",
                         Equation.of_terms(lhs, rhs)))
    return GeneratedSpec("benabou", base_sorts, bound, sig, equations, ws)


# ---------------------------------------------------------------------------
# concrete operation models


def _all_functions(carriers, domain: Word, outs: Sequence, max_rows: int):
    n = product_size(carriers, domain)
    count = len(outs) ** n
    if count > max_rows or n > max_rows:
        raise TableTooLarge(f"operation carrier over {domain!r} has {count} elements (cap {max_rows})")
    return [tuple(p) for p in itertools.product(outs, repeat=n)]


def hop_model(base_carriers: Mapping[Sort, Sequence], bound: int,
              max_rows: int = DEFAULT_MAX_ROWS) -> FiniteAlgebra:
    """The clone-of-operations model: the carrier at (w, s) is every
    function from the product along w to the s carrier, and the generated
    operations act by projection and composition."""
    base_sorts = tuple(base_carriers)
    spec = hall_spec(base_sorts, bound)
    carriers_map = {s: tuple(base_carriers[s]) for s in base_sorts}
    carriers: dict[Sort, tuple] = {}
    elems: dict[tuple[Word, Sort], tuple[FiniteOperation, ...]] = {}
    for w in spec.words:
        for s in base_sorts:
            ops = tuple(FiniteOperation(carriers_map, w, s, outs)
                        for outs in _all_functions(carriers_map, w, carriers_map[s], max_rows))
            elems[(w, s)] = ops
            carriers[hall_sort(w, s)] = ops
    tables: dict[str, dict[tuple, FiniteOperation]] = {}
    for name, op in spec.signature.ops.items():
        if name.startswith("pi_"):
            i = int(name[3:].split("_", 1)[0])
            w = _hall_decode(op.coarity)[0]
            tables[name] = {(): projection_operation(carriers_map, w, i)}
        else:
            table: dict[tuple, FiniteOperation] = {}
            n = 1
            for letter in op.arity:
                n *= len(carriers[letter])
            if n > max_rows:
                raise TableTooLarge(f"table for {name} needs {n} rows (cap {max_rows})")
            u = _hall_decode(op.coarity)[0]
            for row in itertools.product(*(carriers[letter] for letter in op.arity)):
                table[row] = hall_op_apply("xi", *row, word=u, max_rows=max_rows)
            tables[name] = table
    return FiniteAlgebra(spec.signature, carriers, tables, max_rows=max_rows, check=False)


def bop_model(base_carriers: Mapping[Sort, Sequence], bound: int,
              max_rows: int = DEFAULT_MAX_ROWS) -> FiniteAlgebra:
    """The theory-of-operations model: the carrier at (u, w) is every
    function from the product along u to the product along w."""
    base_sorts = tuple(base_carriers)
    spec = benabou_spec(base_sorts, bound)
    carriers_map = {s: tuple(base_carriers[s]) for s in base_sorts}
    carriers: dict[Sort, tuple] = {}
    for u in spec.words:
        for w in spec.words:
            outs = list(rows(carriers_map, w))
            carriers[benabou_sort(u, w)] = tuple(
                FiniteOperation(carriers_map, u, w, f)
                for f in _all_functions(carriers_map, u, outs, max_rows))
    tables: dict[str, dict[tuple, FiniteOperation]] = {}
    for name, op in spec.signature.ops.items():
        if name.startswith("pi_"):
            i = int(name[3:].split("_", 1)[0])
            w = _ben_decode(op.coarity)[0]
            tables[name] = {(): projection_operation(carriers_map, w, i, benabou=True)}
            continue
        n = 1
        for letter in op.arity:
            n *= len(carriers[letter])
        if n > max_rows:
            raise TableTooLarge(f"table for {name} needs {n} rows (cap {max_rows})")
        table: dict[tuple, FiniteOperation] = {}
        if name.startswith("tup_"):
            u, w = _ben_decode(op.coarity)
            for row in itertools.product(*(carriers[letter] for letter in op.arity)):
                table[row] = benabou_op_apply("tup", *row, carriers=carriers_map, domain=u,
                                              max_rows=max_rows)
        else:
            for row in itertools.product(*(carriers[letter] for letter in op.arity)):
                table[row] = benabou_op_apply("comp", row[0], row[1], max_rows=max_rows)
        tables[name] = table
    return FiniteAlgebra(spec.signature, carriers, tables, max_rows=max_rows, check=False)


def _hall_decode(s: Sort):
    from .clones import parse_clone_sort

    decoded = parse_clone_sort(s)
    if decoded is None or decoded[0] != "hall":
        raise TypingError(f"{s} is not a generated pair sort")
    return decoded[1], decoded[2]


def _ben_decode(s: Sort):
    from .clones import parse_clone_sort

    decoded = parse_clone_sort(s)
    if decoded is None or decoded[0] != "benabou":
        raise TypingError(f"{s} is not a generated pair-of-words sort")
    return decoded[1], decoded[2]


def _pack(values: Sequence):
    """Products biased at length one, so that the two model conversions are
    mutually inverse table-for-table."""
    if len(values) == 1:
        return values[0]
    return tuple(values)


def _unpack(word: Word, packed) -> list:
    if len(word) == 1:
        return [packed]
    return list(packed)


def f_hb(hall_model: FiniteAlgebra, base_sorts: Sequence[Sort], bound: int,
         max_rows: int = DEFAULT_MAX_ROWS) -> FiniteAlgebra:
    """Convert a model of the projection/substitution laws into a model of
    the theory laws: the carrier at (w, u) is the biased product of the
    carriers at (w, u_i), and composition unfolds through the substitution
    operators."""
    base_sorts = tuple(base_sorts)
    hspec = hall_spec(base_sorts, bound)
    bspec = benabou_spec(base_sorts, bound)

    def hcar(w: Word, s: Sort):
        return hall_model.carriers[hall_sort(w, s)]

    def pi_elem(w: Word, i: int):
        return hall_model.tables[pi_name(w, i)][()]

    def xi(u: Word, w: Word, s: Sort, f, gs):
        return hall_model.tables[xi_name(u, w, s)][(f, *gs)]

    carriers: dict[Sort, tuple] = {}
    for w in bspec.words:
        for u in bspec.words:
            n = 1
            for s in (hcar(w, letter) for letter in u):
                n *= len(s)
            if n > max_rows:
                raise TableTooLarge(f"converted carrier at ({w!r},{u!r}) needs {n} elements")
            packed = [_pack(list(vals)) for vals in itertools.product(*(hcar(w, letter) for letter in u))]
            carriers[benabou_sort(w, u)] = tuple(packed)
    tables: dict[str, dict[tuple, object]] = {}
    for name, op in bspec.signature.ops.items():
        if name.startswith("pi_"):
            i = int(name[3:].split("_", 1)[0])
            w = _ben_decode(op.coarity)[0]
            tables[name] = {(): _pack([pi_elem(w, i)])}
            continue
        n = 1
        for letter in op.arity:
            n *= len(carriers[letter])
        if n > max_rows:
            raise TableTooLarge(f"converted table for {name} needs {n} rows (cap {max_rows})")
        table: dict[tuple, object] = {}
        if name.startswith("tup_"):
            u, w = _ben_decode(op.coarity)
            for row in itertools.product(*(carriers[letter] for letter in op.arity)):
                args = [_unpack(Word.of(w[i]), row[i])[0] for i in range(len(w))]
                table[row] = _pack([xi(u, w, w[i], pi_elem(w, i), args) for i in range(len(w))])
        else:
            u, x, w = _decode_comp(op)
            for row in itertools.product(*(carriers[letter] for letter in op.arity)):
                a = _unpack(x, row[0])
                b = _unpack(w, row[1])
                table[row] = _pack([xi(u, x, w[i], b[i], a) for i in range(len(w))])
        tables[name] = table
    return FiniteAlgebra(bspec.signature, carriers, tables, max_rows=max_rows, check=False)


def _decode_comp(op: OperationSymbol):
    u, x = _ben_decode(op.arity[0])
    x2, w = _ben_decode(op.arity[1])
    return u, x, w


def f_bh(ben_model: FiniteAlgebra, base_sorts: Sequence[Sort], bound: int,
         max_rows: int = DEFAULT_MAX_ROWS) -> FiniteAlgebra:
    """Convert a model of the theory laws into a model of the
    projection/substitution laws: the carrier at (w, s) is the carrier at
    (w, (s)), and substitution unfolds through tupling and composition."""
    base_sorts = tuple(base_sorts)
    hspec = hall_spec(base_sorts, bound)

    def bcar(u: Word, w: Word):
        return ben_model.carriers[benabou_sort(u, w)]

    carriers = {hall_sort(w, s): bcar(w, Word.of(s))
                for w in hspec.words for s in base_sorts}
    tables: dict[str, dict[tuple, object]] = {}
    for name, op in hspec.signature.ops.items():
        if name.startswith("pi_"):
            w = _hall_decode(op.coarity)[0]
            tables[name] = {(): ben_model.tables[name][()]}
            continue
        first_w, s = _hall_decode(op.arity[0])
        u = _hall_decode(op.coarity)[0]
        w = first_w
        n = 1
        for letter in op.arity:
            n *= len(carriers[letter])
        if n > max_rows:
            raise TableTooLarge(f"converted table for {name} needs {n} rows (cap {max_rows})")
        tup_table = ben_model.tables[tup_name(u, w)]
        comp_table = ben_model.tables[comp_name(u, w, Word.of(s))]
        table: dict[tuple, object] = {}
        for row in itertools.product(*(carriers[letter] for letter in op.arity)):
            a, args = row[0], row[1:]
            table[row] = comp_table[(tup_table[tuple(args)], a)]
        tables[name] = table
    return FiniteAlgebra(hspec.signature, carriers, tables, max_rows=max_rows, check=False)


def prop45_round_trip_maps(ben_model: FiniteAlgebra, base_sorts: Sequence[Sort], bound: int,
                           max_rows: int = DEFAULT_MAX_ROWS):
    """The explicit mutually inverse maps between a theory-law model and the
    double conversion of it: f post-composes with the projections, g tuples
    the components back."""
    base_sorts = tuple(base_sorts)
    bspec = benabou_spec(base_sorts, bound)
    double = f_hb(f_bh(ben_model, base_sorts, bound, max_rows), base_sorts, bound, max_rows)

    def f(u: Word, w: Word, a):
        comps = [ben_model.tables[comp_name(u, w, Word.of(w[i]))][(a, ben_model.tables[pi_name(w, i)][()])]
                 for i in range(len(w))]
        return _pack(comps)

    def g(u: Word, w: Word, b):
        comps = _unpack(w, b)
        return ben_model.tables[tup_name(u, w)][tuple(comps)]

    return double, f, g


# ---------------------------------------------------------------------------
# sub-model extraction


def random_sub_hall_model(hall_model: FiniteAlgebra, base_sorts: Sequence[Sort], bound: int,
                          rng, seeds_per_sort: int = 1) -> FiniteAlgebra:
    """A random subalgebra of a projection/substitution model: seed each
    pair sort with the projections plus random elements, close under the
    substitution tables, and restrict."""
    spec = hall_spec(tuple(base_sorts), bound)
    chosen: dict[Sort, set] = {s: set() for s in spec.signature.sorts}
    for name, op in spec.signature.ops.items():
        if name.startswith("pi_"):
            chosen[op.coarity].add(hall_model.tables[name][()])
    for s in spec.signature.sorts:
        pool = hall_model.carriers[s]
        for _ in range(seeds_per_sort):
            chosen[s].add(pool[rng.randrange(len(pool))])
    xi_ops = [op for name, op in spec.signature.ops.items() if name.startswith("xi_")]
    changed = True
    while changed:
        changed = False
        for op in xi_ops:
            table = hall_model.tables[op.name]
            for row in itertools.product(*(sorted(chosen[letter], key=_op_key)
                                           for letter in op.arity)):
                out = table[row]
                if out not in chosen[op.coarity]:
                    chosen[op.coarity].add(out)
                    changed = True
    carriers = {s: tuple(sorted(chosen[s], key=_op_key)) for s in spec.signature.sorts}
    tables: dict[str, dict[tuple, object]] = {}
    for name, op in spec.signature.ops.items():
        table = hall_model.tables[name]
        tables[name] = {row: table[row]
                        for row in itertools.product(*(carriers[letter] for letter in op.arity))}
    return FiniteAlgebra(spec.signature, carriers, tables, check=False)


def _op_key(op: FiniteOperation):
    return repr(op.outputs)


# ---------------------------------------------------------------------------
# the category view of a theory-law model


class CategoryView:
    """Hom-set presentation of a theory-law model: objects are the words,
    homs the carriers, composition and identities from the tables."""

    def __init__(self, ben_model: FiniteAlgebra, base_sorts: Sequence[Sort], bound: int):
        self.model = ben_model
        self.spec = benabou_spec(tuple(base_sorts), bound)

    def hom(self, u: Word, w: Word) -> tuple:
        return self.model.carriers[benabou_sort(u, w)]

    def identity(self, w: Word):
        projs = tuple(self.model.tables[pi_name(w, i)][()] for i in range(len(w)))
        return self.model.tables[tup_name(w, w)][projs]

    def compose(self, u: Word, x: Word, w: Word, p, q):
        """p in Hom(u, x) followed by q in Hom(x, w)."""
        return self.model.tables[comp_name(u, x, w)][(p, q)]

    def check_laws(self, rng=None, max_triples: int = 20_000) -> bool:
        for u in self.spec.words:
            for w in self.spec.words:
                id_u = self.identity(u)
                id_w = self.identity(w)
                for p in self.hom(u, w):
                    if self.compose(u, u, w, id_u, p) != p:
                        return False
                    if self.compose(u, w, w, p, id_w) != p:
                        return False
        triples = []
        for u in self.spec.words:
            for x in self.spec.words:
                for w in self.spec.words:
                    for y in self.spec.words:
                        triples.append((u, x, w, y))
        for (u, x, w, y) in triples:
            hu, hx, hw = self.hom(u, x), self.hom(x, w), self.hom(w, y)
            total = len(hu) * len(hx) * len(hw)
            if total == 0:
                continue
            if total <= max_triples:
                space = itertools.product(hu, hx, hw)
            else:
                rng = rng or __import__("random").Random(0)
                space = ((hu[rng.randrange(len(hu))], hx[rng.randrange(len(hx))],
                          hw[rng.randrange(len(hw))]) for _ in range(max_triples))
            for p, q, r in space:
                left = self.compose(u, w, y, self.compose(u, x, w, p, q), r)
                right = self.compose(u, x, y, p, self.compose(x, w, y, q, r))
                if left != right:
                    return False
        return True


def category_view(ben_model: FiniteAlgebra, base_sorts: Sequence[Sort], bound: int) -> CategoryView:
    return CategoryView(ben_model, base_sorts, bound)


# ---------------------------------------------------------------------------
# the explicit equivalence morphisms and 2-cells


def hb_polyderivator_d(base_sorts: Sequence[Sort], bound: int) -> Polyderivator:
    """From the theory signature to the projection/substitution signature:
    a pair of words maps to the word of its component pairs, tupling to the
    identity family, composition to substitution."""
    base_sorts = tuple(base_sorts)
    bspec = benabou_spec(base_sorts, bound)
    hspec = hall_spec(base_sorts, bound)
    phi_map: dict[Sort, Word] = {}
    for u in bspec.words:
        for w in bspec.words:
            phi_map[benabou_sort(u, w)] = Word(hall_sort(u, w[i]) for i in range(len(w)))
    phi = SortMap(bspec.signature.sorts, hspec.signature.sorts, phi_map)
    images: dict[str, TermFamily] = {}
    for name, op in bspec.signature.ops.items():
        if name.startswith("pi_"):
            i = int(name[3:].split("_", 1)[0])
            w = _ben_decode(op.coarity)[0]
            ctx = canonical_context(Word())
            comp = App(hspec.signature.op(pi_name(w, i)), [], context=ctx)
            images[name] = TermFamily(Word(), phi_map[op.coarity], [comp])
        elif name.startswith("tup_"):
            dom = phi.sharp(op.arity)
            images[name] = TermFamily.identity(dom)
        else:
            u, v, w = _decode_comp(op)
            dom = phi.sharp(op.arity)
            ctx = canonical_context(dom)
            comps = []
            for i in range(len(w)):
                head = Var(ctx, ctx.var_at(len(v) + i))
                tail = [Var(ctx, ctx.var_at(j)) for j in range(len(v))]
                comps.append(App(hspec.signature.op(xi_name(u, v, w[i])), [head] + tail, context=ctx))
            images[name] = TermFamily(dom, phi_map[op.coarity], comps)
    return Polyderivator(bspec.signature, hspec.signature, phi, images)


def hb_polyderivator_e(base_sorts: Sequence[Sort], bound: int) -> Polyderivator:
    """From the projection/substitution signature to the theory signature:
    a pair maps to the single pair-of-words sort, substitution to
    composition with a tupling."""
    base_sorts = tuple(base_sorts)
    bspec = benabou_spec(base_sorts, bound)
    hspec = hall_spec(base_sorts, bound)
    psi_map: dict[Sort, Word] = {}
    for w in hspec.words:
        for s in base_sorts:
            psi_map[hall_sort(w, s)] = Word.of(benabou_sort(w, Word.of(s)))
    psi = SortMap(hspec.signature.sorts, bspec.signature.sorts, psi_map)
    images: dict[str, TermFamily] = {}
    for name, op in hspec.signature.ops.items():
        if name.startswith("pi_"):
            w = _hall_decode(op.coarity)[0]
            ctx = canonical_context(Word())
            comp = App(bspec.signature.op(name), [], context=ctx)
            images[name] = TermFamily(Word(), psi_map[op.coarity], [comp])
        else:
            w, s = _hall_decode(op.arity[0])
            u = _hall_decode(op.coarity)[0]
            dom = psi.sharp(op.arity)
            ctx = canonical_context(dom)
            head = Var(ctx, ctx.var_at(0))
            tail = [Var(ctx, ctx.var_at(1 + i)) for i in range(len(w))]
            tup = App(bspec.signature.op(tup_name(u, w)), tail, context=ctx)
            comp = App(bspec.signature.op(comp_name(u, w, Word.of(s))), [tup, head])
            images[name] = TermFamily(dom, psi_map[op.coarity], [comp])
    return Polyderivator(hspec.signature, bspec.signature, psi, images)


def hb_transformations(base_sorts: Sequence[Sort], bound: int) -> dict:
    """The explicit invertibility 2-cells: on the theory side, project and
    retuple; on the projection/substitution side, identity-shaped."""
    base_sorts = tuple(base_sorts)
    bspec = benabou_spec(base_sorts, bound)
    hspec = hall_spec(base_sorts, bound)
    d = hb_polyderivator_d(base_sorts, bound)
    e = hb_polyderivator_e(base_sorts, bound)
    id_b = identity_polyderivator(bspec.signature)
    id_h = identity_polyderivator(hspec.signature)
    ed = compose_polyderivators(e, d)
    de = compose_polyderivators(d, e)

    chi_b_xi: dict[Sort, TermFamily] = {}
    rho_b_xi: dict[Sort, TermFamily] = {}
    for u in bspec.words:
        for w in bspec.words:
            sort = benabou_sort(u, w)
            split = Word(benabou_sort(u, Word.of(w[i])) for i in range(len(w)))
            ctx1 = canonical_context(Word.of(sort))
            v0 = Var(ctx1, ctx1.var_at(0))
            comps = [
                App(bspec.signature.op(comp_name(u, w, Word.of(w[i]))),
                    [v0, App(bspec.signature.op(pi_name(w, i)), [], context=ctx1)])
                for i in range(len(w))
            ]
            chi_b_xi[sort] = TermFamily(Word.of(sort), split, comps)
            ctx2 = canonical_context(split)
            retuple = App(bspec.signature.op(tup_name(u, w)),
                          [Var(ctx2, v) for v in ctx2], context=ctx2)
            rho_b_xi[sort] = TermFamily(split, Word.of(sort), [retuple])
    chi_b = Transformation(id_b, ed, chi_b_xi)
    rho_b = Transformation(ed, id_b, rho_b_xi)

    id_fams_h = {s: TermFamily.identity(Word.of(s)) for s in hspec.signature.sorts}
    chi_h = Transformation(id_h, de, id_fams_h)
    rho_h = Transformation(de, id_h, id_fams_h)
    return {
        "d": d, "e": e, "ed": ed, "de": de,
        "chi_b": chi_b, "rho_b": rho_b, "chi_h": chi_h, "rho_h": rho_h,
        "id_b": id_b, "id_h": id_h,
        "benabou_spec": bspec, "hall_spec": hspec,
    }


def check_pd_spec_morphism(pd: Polyderivator, source_spec, target_spec,
                           models: Sequence[FiniteAlgebra] = (),
                           model_names: Sequence[str] | None = None,
                           max_rows: int = DEFAULT_MAX_ROWS):
    """Check that every translated source equation is a consequence of the
    target theory: decided exactly for generated free clone theories,
    verified on supplied models otherwise."""
    from .morphisms import translate_equation
    from .transformations import _named_equations

    names = list(model_names) if model_names is not None else [f"model{i}" for i in range(len(models))]
    for label, model in zip(names, models):
        for eq_name, eq in _named_equations(target_spec):
            if not satisfies(model, eq, max_rows=max_rows):
                raise ModelNotAModel(f"{label} violates axiom {eq_name}")
    flavor = getattr(target_spec, "free_flavor", None)
    all_proved = True
    for eq_name, eq in _named_equations(source_spec):
        handled = False
        if flavor is not None:
            canonical = all(v.name == f"v{i}" for i, v in enumerate(eq.source))
            if canonical:
                ok = True
                for y in eq.target:
                    left = translate_term(pd, eq.lhs(y))
                    right = translate_term(pd, eq.rhs(y))
                    for lc, rc in zip(left.components, right.components):
                        if lc != rc and not equal_mod_free_theory(lc, rc, flavor):
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    return Refuted(eq_name, detail="free-theory word problem")
                handled = True
        if not handled:
            all_proved = False
            translated = translate_equation(pd, eq)
            if not models:
                return Refuted(eq_name, detail="no decision path and no models supplied")
            for label, model in zip(names, models):
                if not satisfies(model, translated, max_rows=max_rows):
                    return Refuted(eq_name, model=label)
    return Proved() if all_proved else VerifiedOnModels(len(models))
