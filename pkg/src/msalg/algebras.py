"""Finite many-sorted algebras, term realization, brute-force satisfaction.

Tables are dense maps keyed by argument tuples in carrier insertion order;
tuple enumeration is row-major throughout.  Satisfaction is decided by
exhaustive enumeration of valuations; large valuation spaces are swept with
a vectorized index evaluator, small ones with a direct recursive one, and
the two are kept interchangeable.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import (
    ArityMismatch,
    ContextMismatch,
    DomainMismatch,
    SignatureMismatch,
    SortMismatch,
    TableTooLarge,
    TypingError,
)
from .kernel import OperationSymbol, Signature, Sort, SortedSet, Variable, Word
from .terms import App, Equation, GeneralTerm, Term, Var

DEFAULT_MAX_ROWS = 10 ** 6
_NP_THRESHOLD = 4096
_CHUNK = 1 << 20


def product_size(carriers: Mapping[Sort, Sequence], word: Word) -> int:
    n = 1
    for s in word:
        n *= len(carriers[s])
    return n


def rows(carriers: Mapping[Sort, Sequence], word: Word) -> Iterator[tuple]:
    """Row-major enumeration of the product of the carriers along word."""
    return itertools.product(*(carriers[s] for s in word))


class FiniteAlgebra:
    """Finite carriers per sort plus one total table per operation."""

    __slots__ = ("signature", "carriers", "tables", "_index", "_np_tables")

    def __init__(self, signature: Signature, carriers: Mapping[Sort, Sequence],
                 tables: Mapping[str, Mapping[tuple, object]],
                 max_rows: int = DEFAULT_MAX_ROWS, check: bool = True):
        self.signature = signature
        norm: dict[Sort, tuple] = {}
        for s in signature.sorts:
            if s not in carriers:
                raise TypingError(f"no carrier given for sort {s}")
            elems = tuple(carriers[s])
            if len(set(elems)) != len(elems):
                raise TypingError(f"carrier of {s} has duplicate elements")
            norm[s] = elems
        self.carriers = norm
        self.tables = {name: dict(table) for name, table in tables.items()}
        self._index = {s: {e: i for i, e in enumerate(norm[s])} for s in norm}
        self._np_tables: dict[str, np.ndarray] = {}
        if check:
            self._validate(max_rows)

    def _validate(self, max_rows: int):
        for name, op in self.signature.ops.items():
            if name not in self.tables:
                raise TypingError(f"no table for operation {name}")
            n = product_size(self.carriers, op.arity)
            if n > max_rows:
                raise TableTooLarge(f"table for {name} needs {n} rows (cap {max_rows})")
            table = self.tables[name]
            if len(table) != n:
                raise TypingError(f"table for {name} has {len(table)} rows, expected {n}")
            out = self._index[op.coarity]
            for row in rows(self.carriers, op.arity):
                if row not in table:
                    raise TypingError(f"table for {name} is missing row {row}")
                if table[row] not in out:
                    raise TypingError(f"table for {name} maps {row} outside the {op.coarity} carrier")
        extra = set(self.tables) - set(self.signature.ops)
        if extra:
            raise TypingError(f"tables given for unknown operations: {sorted(extra)}")

    def index(self, s: Sort) -> Mapping[object, int]:
        return self._index[s]

    def apply(self, name: str, row: tuple):
        return self.tables[name][row]

    def np_table(self, name: str) -> np.ndarray:
        """The table as an index array over the flattened argument space."""
        cached = self._np_tables.get(name)
        if cached is not None:
            return cached
        op = self.signature.op(name)
        out_index = self._index[op.coarity]
        table = self.tables[name]
        flat = np.fromiter(
            (out_index[table[row]] for row in rows(self.carriers, op.arity)),
            dtype=np.int64,
            count=product_size(self.carriers, op.arity),
        )
        self._np_tables[name] = flat
        return flat

    def same_signature(self, other: "FiniteAlgebra") -> bool:
        return self.signature == other.signature

    def __eq__(self, other):
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return (self.signature == other.signature and self.carriers == other.carriers
                and self.tables == other.tables)

    def __repr__(self):
        sizes = {s.name: len(c) for s, c in self.carriers.items()}
        return f"FiniteAlgebra(carriers={sizes}, ops={list(self.tables)})"


class Valuation:
    """A sort-respecting total assignment of carrier elements to a context."""

    __slots__ = ("context", "assignment")

    def __init__(self, algebra: FiniteAlgebra, context: SortedSet, assignment: Mapping[Variable, object]):
        for v in context:
            if v not in assignment:
                raise ContextMismatch(f"valuation missing variable {v!r}")
            if assignment[v] not in algebra.index(v.sort):
                raise SortMismatch(f"value {assignment[v]!r} for {v!r} outside the {v.sort} carrier")
        self.context = context
        self.assignment = dict(assignment)

    def __getitem__(self, v: Variable):
        return self.assignment[v]


def valuations(algebra: FiniteAlgebra, context: SortedSet) -> Iterator[dict[Variable, object]]:
    """All valuations of the context in the algebra, in row-major order."""
    vs = context.variables
    for row in itertools.product(*(algebra.carriers[v.sort] for v in vs)):
        yield dict(zip(vs, row))


def _check_sig(algebra: FiniteAlgebra, term: Term):
    for s in set(v.sort for v in term.context):
        if not algebra.signature.has_sort(s):
            raise SignatureMismatch(f"context sort {s} not in the algebra's signature")


def realize(algebra: FiniteAlgebra, term: Term, valuation: Mapping[Variable, object]):
    """Evaluate a term: variables through the valuation, operations through
    table lookup on the realized arguments."""
    memo: dict[int, object] = {}

    def go(t: Term):
        hit = memo.get(id(t))
        if hit is not None:
            return hit
        if isinstance(t, Var):
            try:
                value = valuation[t.variable]
            except KeyError:
                raise ContextMismatch(f"valuation missing variable {t.variable!r}") from None
        else:
            try:
                table = algebra.tables[t.op.name]
            except KeyError:
                raise SignatureMismatch(f"operation {t.op.name} not interpreted in the algebra") from None
            value = table[tuple(go(a) for a in t.args)]
        memo[id(t)] = value
        return value

    return go(term)


def realize_general(algebra: FiniteAlgebra, p: GeneralTerm) -> Callable[[Mapping[Variable, object]], dict]:
    """The term operation of a general term: valuations on the source map to
    valuations on the target, variable by variable."""

    def operation(valuation: Mapping[Variable, object]) -> dict[Variable, object]:
        return {y: realize(algebra, p(y), valuation) for y in p.target}

    return operation


def _np_eval(algebra: FiniteAlgebra, term: Term, positions: Mapping[Variable, int],
             var_arrays: Sequence[np.ndarray], memo: dict[int, np.ndarray]) -> np.ndarray:
    hit = memo.get(id(term))
    if hit is not None:
        return hit
    if isinstance(term, Var):
        out = var_arrays[positions[term.variable]]
    else:
        table = algebra.np_table(term.op.name)
        args = [_np_eval(algebra, a, positions, var_arrays, memo) for a in term.args]
        key = None
        for a, s in zip(args, term.op.arity):
            size = len(algebra.carriers[s])
            key = a if key is None else key * size + a
        if key is None:
            key = np.zeros(memo["_shape"], dtype=np.int64)
        out = table[key]
    memo[id(term)] = out
    return out


def _np_satisfies(algebra: FiniteAlgebra, eq: Equation) -> bool:
    ctx = eq.source
    vs = ctx.variables
    sizes = [len(algebra.carriers[v.sort]) for v in vs]
    total = 1
    for n in sizes:
        total *= n
    if total == 0:
        return True
    strides = [1] * len(sizes)
    for j in range(len(sizes) - 2, -1, -1):
        strides[j] = strides[j + 1] * sizes[j + 1]
    positions = {v: j for j, v in enumerate(vs)}
    pairs = [(eq.lhs(y), eq.rhs(y)) for y in eq.target]
    for lo in range(0, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        flat = np.arange(lo, hi, dtype=np.int64)
        var_arrays = [(flat // strides[j]) % sizes[j] for j in range(len(sizes))]
        memo: dict = {"_shape": hi - lo}
        for left, right in pairs:
            a = _np_eval(algebra, left, positions, var_arrays, memo)
            b = _np_eval(algebra, right, positions, var_arrays, memo)
            if not np.array_equal(a, b):
                return False
    return True


def satisfies(algebra: FiniteAlgebra, eq: Equation, max_rows: int = DEFAULT_MAX_ROWS,
              force_python: bool = False) -> bool:
    """Exhaustive check that both sides of the equation realize to the same
    term operation.  Vacuously true when some context carrier is empty."""
    for y in eq.target:
        _check_sig(algebra, eq.lhs(y))
        _check_sig(algebra, eq.rhs(y))
    n = 1
    for v in eq.source:
        if not algebra.signature.has_sort(v.sort):
            raise SignatureMismatch(f"context sort {v.sort} not in the algebra's signature")
        n *= len(algebra.carriers[v.sort])
    if n > max_rows:
        raise TableTooLarge(f"equation needs {n} valuations (cap {max_rows})")
    if n == 0:
        return True
    if not force_python and n > _NP_THRESHOLD:
        return _np_satisfies(algebra, eq)
    pairs = [(eq.lhs(y), eq.rhs(y)) for y in eq.target]
    for val in valuations(algebra, eq.source):
        for left, right in pairs:
            if realize(algebra, left, val) != realize(algebra, right, val):
                return False
    return True


def satisfies_all(algebra: FiniteAlgebra, eqs: Iterable[Equation],
                  max_rows: int = DEFAULT_MAX_ROWS) -> bool:
    return all(satisfies(algebra, eq, max_rows=max_rows) for eq in eqs)


def first_failure(algebra: FiniteAlgebra, eqs: Iterable, max_rows: int = DEFAULT_MAX_ROWS):
    """First (name, eq) pair not satisfied, scanning named or bare equations."""
    for item in eqs:
        name, eq = item if isinstance(item, tuple) else (None, item)
        if not satisfies(algebra, eq, max_rows=max_rows):
            return name, eq
    return None


def check_homomorphism(maps: Mapping[Sort, Mapping[object, object]],
                       a: FiniteAlgebra, b: FiniteAlgebra) -> bool:
    """True iff the per-sort maps commute with every operation table."""
    if a.signature != b.signature:
        raise SignatureMismatch("homomorphism endpoints have different signatures")
    for s in a.signature.sorts:
        if s not in maps:
            raise SortMismatch(f"no component given for sort {s}")
        f = maps[s]
        for e in a.carriers[s]:
            if e not in f:
                raise SortMismatch(f"component at {s} undefined on {e!r}")
            if f[e] not in b.index(s):
                raise SortMismatch(f"component at {s} maps {e!r} outside the target carrier")
    for name, op in a.signature.ops.items():
        f_out = maps[op.coarity]
        for row in rows(a.carriers, op.arity):
            mapped = tuple(maps[s][e] for s, e in zip(op.arity, row))
            if f_out[a.apply(name, row)] != b.apply(name, mapped):
                return False
    return True


class FiniteOperation:
    """A concrete finitary operation over fixed carriers, stored row-major.

    codomain is a Sort for clone-of-operations elements, a Word for
    theory-of-operations elements; outputs align with rows(carriers, domain).
    """

    __slots__ = ("carriers", "domain", "codomain", "outputs", "_strides", "_index", "_hash")

    def __init__(self, carriers: Mapping[Sort, Sequence], domain: Word, codomain, outputs: Sequence):
        self.carriers = carriers
        self.domain = Word(domain)
        self.codomain = codomain
        self.outputs = tuple(outputs)
        n = product_size(carriers, self.domain)
        if len(self.outputs) != n:
            raise ArityMismatch(f"operation over {self.domain!r} needs {n} outputs, got {len(self.outputs)}")
        sizes = [len(carriers[s]) for s in self.domain]
        strides = [1] * len(sizes)
        for j in range(len(sizes) - 2, -1, -1):
            strides[j] = strides[j + 1] * sizes[j + 1]
        self._strides = tuple(strides)
        self._index = None
        self._hash = hash((self.domain, _cod_key(codomain), self.outputs))

    def row_index(self, row: tuple) -> int:
        if self._index is None:
            self._index = tuple({e: i for i, e in enumerate(self.carriers[s])}
                                for s in self.domain)
        i = 0
        for value, index, stride in zip(row, self._index, self._strides):
            try:
                i += index[value] * stride
            except KeyError:
                raise DomainMismatch(f"value {value!r} outside the carrier") from None
        return i

    def apply(self, row: tuple):
        if len(row) != len(self.domain):
            raise ArityMismatch(f"operation over {self.domain!r} applied to {len(row)} values")
        return self.outputs[self.row_index(row)]

    def __eq__(self, other):
        if not isinstance(other, FiniteOperation):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self.outputs == other.outputs)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FiniteOperation({self.domain!r} -> {self.codomain}, {self.outputs!r})"


def _cod_key(codomain):
    return ("w", tuple(codomain)) if isinstance(codomain, Word) else ("s", codomain)


def projection_operation(carriers: Mapping[Sort, Sequence], w: Word, i: int,
                         benabou: bool = False) -> FiniteOperation:
    """The i-th projection out of the product along w."""
    if not 0 <= i < len(w):
        raise ArityMismatch(f"projection index {i} outside the word of length {len(w)}")
    outputs = [(row[i],) if benabou else row[i] for row in rows(carriers, w)]
    codomain = Word.of(w[i]) if benabou else w[i]
    return FiniteOperation(carriers, w, codomain, outputs)


def hall_op_apply(kind: str, *args, carriers=None, word=None, index=None,
                  max_rows: int = DEFAULT_MAX_ROWS) -> FiniteOperation:
    """Clone structure on concrete operations: projections, and substitution
    f(g_0, ..., g_{n-1}) as composition with the tupling of the g_i."""
    if kind == "pi":
        if carriers is None:
            carriers, word, index = args
        return projection_operation(carriers, word, index)
    if kind != "xi":
        raise TypingError(f"unknown clone operation kind {kind!r}")
    f, *gs = args
    if len(gs) != len(f.domain):
        raise ArityMismatch(f"substitution into an operation over {f.domain!r} needs {len(f.domain)} inner operations")
    udom = gs[0].domain if gs else (word if word is not None else Word())
    if word is not None and gs and Word(word) != gs[0].domain:
        raise DomainMismatch("explicit domain disagrees with the inner operations")
    for j, g in enumerate(gs):
        if g.domain != Word(udom):
            raise DomainMismatch(f"inner operation {j} has domain {g.domain!r}, expected {Word(udom)!r}")
        if isinstance(g.codomain, Word) or g.codomain != f.domain[j]:
            raise SortMismatch(f"inner operation {j} lands in {g.codomain}, expected {f.domain[j]}")
    udom = Word(udom)
    n = product_size(f.carriers, udom)
    if n > max_rows:
        raise TableTooLarge(f"composite needs {n} rows (cap {max_rows})")
    outputs = [f.apply(tuple(g.outputs[k] for g in gs)) for k in range(n)]
    return FiniteOperation(f.carriers, udom, f.codomain, outputs)


def benabou_op_apply(kind: str, *args, carriers=None, word=None, index=None, domain=None,
                     max_rows: int = DEFAULT_MAX_ROWS) -> FiniteOperation:
    """Theory structure on concrete operations: projections, tupling, and
    composition of mappings (diagrammatic order: comp(f, g) = g after f)."""
    if kind == "pi":
        if carriers is None:
            carriers, word, index = args
        return projection_operation(carriers, word, index, benabou=True)
    if kind == "tup":
        fs = list(args)
        if fs:
            dom = fs[0].domain
            base = fs[0].carriers
        else:
            if domain is None or carriers is None:
                raise TypingError("empty tupling needs explicit carriers and domain")
            dom, base = Word(domain), carriers
        cod: list[Sort] = []
        for j, g in enumerate(fs):
            if g.domain != dom:
                raise DomainMismatch(f"tupling component {j} has domain {g.domain!r}, expected {dom!r}")
            if not isinstance(g.codomain, Word) or len(g.codomain) != 1:
                raise SortMismatch(f"tupling component {j} must land in a single-letter word")
            cod.append(g.codomain[0])
        n = product_size(base, dom)
        if n > max_rows:
            raise TableTooLarge(f"tupling needs {n} rows (cap {max_rows})")
        outputs = [tuple(g.outputs[k][0] for g in fs) for k in range(n)]
        return FiniteOperation(base, dom, Word(cod), outputs)
    if kind == "comp":
        f, g = args
        if not isinstance(f.codomain, Word) or not isinstance(g.codomain, Word):
            raise SortMismatch("composition needs word-valued operations")
        if g.domain != f.codomain:
            raise DomainMismatch(f"composition mismatch: {f.codomain!r} then {g.domain!r}")
        outputs = [g.apply(mid) for mid in f.outputs]
        return FiniteOperation(f.carriers, f.domain, g.codomain, outputs)
    raise TypingError(f"unknown theory operation kind {kind!r}")


def term_table(algebra: FiniteAlgebra, term: Term, max_rows: int = DEFAULT_MAX_ROWS) -> FiniteOperation:
    """The term operation as a table, built bottom-up by clone composition.

    Independent of realize(): the two strategies are the exchange law and
    are cross-checked in the tests.
    """
    ctx = term.context
    w = ctx.word()
    n = product_size(algebra.carriers, w)
    if n > max_rows:
        raise TableTooLarge(f"term table needs {n} rows (cap {max_rows})")

    def go(t: Term) -> FiniteOperation:
        if isinstance(t, Var):
            return projection_operation(algebra.carriers, w, ctx.position(t.variable))
        f = FiniteOperation(
            algebra.carriers, t.op.arity, t.op.coarity,
            [algebra.apply(t.op.name, row) for row in rows(algebra.carriers, t.op.arity)])
        return hall_op_apply("xi", f, *[go(a) for a in t.args], word=w, max_rows=max_rows)

    return go(term)
