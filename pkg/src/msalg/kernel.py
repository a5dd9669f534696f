"""Sorts, words over sorts, sorted variable contexts, signatures, sort maps.

A Word is both an operation arity and an object of the derived clone
calculus.  Contexts (SortedSet) keep insertion order everywhere; all
enumerations downstream iterate in that order, which makes results and
fixtures reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .errors import (
    IndexOutOfRange,
    TypingError,
    UnknownOperation,
    UnknownSort,
    UnknownVariable,
)


@dataclass(frozen=True)
class Sort:
    """A type name.  Equality is name equality."""

    name: str

    def __post_init__(self):
        if not self.name:
            raise TypingError("sort name must be non-empty")

    def __repr__(self):
        return f"Sort({self.name!r})"

    def __str__(self):
        return self.name


class Word(tuple):
    """A finite sequence of sorts.  The empty word is Word()."""

    def __new__(cls, letters: Iterable[Sort] = ()):
        if type(letters) is Word:
            return letters
        w = tuple.__new__(cls, letters)
        for letter in w:
            if not isinstance(letter, Sort):
                raise TypingError(f"word letter {letter!r} is not a Sort")
        return w

    @staticmethod
    def of(*sorts: Sort) -> "Word":
        return Word(sorts)

    def __add__(self, other) -> "Word":
        return Word(tuple.__add__(self, other))

    def __getitem__(self, item):
        result = tuple.__getitem__(self, item)
        return Word(result) if isinstance(item, slice) else result

    def __repr__(self):
        return "(" + " ".join(s.name for s in self) + ")"


EMPTY_WORD = Word()


def concat(w1: Word, w2: Word) -> Word:
    """Concatenation of words; the empty word is neutral."""
    return Word(w1) + Word(w2)


@dataclass(frozen=True)
class Variable:
    """A named variable of a fixed sort."""

    name: str
    sort: Sort

    def __repr__(self):
        return f"{self.name}:{self.sort.name}"


class SortedSet:
    """A finite ordered family of sorted variables (a context).

    Variable names must be unique within each sort.  Positional access
    follows insertion order across all sorts.
    """

    __slots__ = ("_vars", "_positions", "_by_name", "_hash")

    def __init__(self, variables: Iterable[Variable] = ()):
        vs = tuple(variables)
        seen: set[tuple[str, Sort]] = set()
        positions: dict[Variable, int] = {}
        by_name: dict[str, Variable | None] = {}
        for i, v in enumerate(vs):
            if not isinstance(v, Variable):
                raise TypingError(f"context entry {v!r} is not a Variable")
            key = (v.name, v.sort)
            if key in seen:
                raise TypingError(f"duplicate variable {v!r} in context")
            seen.add(key)
            positions[v] = i
            # names shared across sorts stay ambiguous for name lookup
            by_name[v.name] = None if v.name in by_name else v
        self._vars = vs
        self._positions = positions
        self._by_name = by_name
        self._hash = hash(vs)

    @property
    def variables(self) -> tuple[Variable, ...]:
        return self._vars

    def __len__(self) -> int:
        return len(self._vars)

    def __iter__(self) -> Iterator[Variable]:
        return iter(self._vars)

    def __contains__(self, v: Variable) -> bool:
        return v in self._positions

    def var_at(self, i: int) -> Variable:
        if not 0 <= i < len(self._vars):
            raise UnknownVariable(f"no variable at position {i} in context of size {len(self._vars)}")
        return self._vars[i]

    def position(self, v: Variable) -> int:
        try:
            return self._positions[v]
        except KeyError:
            raise UnknownVariable(f"variable {v!r} not in context") from None

    def by_name(self, name: str) -> Variable:
        v = self._by_name.get(name)
        if v is None:
            if name in self._by_name:
                raise UnknownVariable(f"variable name {name!r} is ambiguous in this context")
            raise UnknownVariable(f"no variable named {name!r} in context")
        return v

    def word(self) -> Word:
        """The word of sorts in positional order."""
        return Word(v.sort for v in self._vars)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, SortedSet):
            return NotImplemented
        return self._vars == other._vars

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "{" + ", ".join(map(repr, self._vars)) + "}"


EMPTY_CONTEXT = SortedSet()


@lru_cache(maxsize=None)
def canonical_context(w: Word) -> SortedSet:
    """The context with one positional variable v0, v1, ... per letter of w.

    Cached so that equal words share one context object; equality checks on
    terms then hit the identity fast path.
    """
    return SortedSet(Variable(f"v{i}", s) for i, s in enumerate(w))


def is_canonical(ctx: SortedSet) -> bool:
    return ctx is canonical_context(ctx.word()) or ctx == canonical_context(ctx.word())


@dataclass(frozen=True)
class OperationSymbol:
    """A formal operation with a fixed arity word and coarity sort."""

    name: str
    arity: Word
    coarity: Sort

    def __repr__(self):
        return f"{self.name}: {self.arity!r} -> {self.coarity.name}"


class Signature:
    """A finite set of sorts plus named operation symbols over them."""

    __slots__ = ("_sorts", "_sort_set", "_ops")

    def __init__(self, sorts: Iterable[Sort], ops: Iterable[OperationSymbol] = ()):
        self._sorts = tuple(dict.fromkeys(sorts))
        self._sort_set = frozenset(self._sorts)
        table: dict[str, OperationSymbol] = {}
        for op in ops:
            if op.name in table:
                raise TypingError(f"duplicate operation name {op.name!r}")
            if op.coarity not in self._sort_set:
                raise UnknownSort(f"coarity {op.coarity} of {op.name} not among the declared sorts")
            for letter in op.arity:
                if letter not in self._sort_set:
                    raise UnknownSort(f"arity letter {letter} of {op.name} not among the declared sorts")
            table[op.name] = op
        self._ops = table

    @property
    def sorts(self) -> tuple[Sort, ...]:
        return self._sorts

    @property
    def ops(self) -> Mapping[str, OperationSymbol]:
        return self._ops

    def has_sort(self, s: Sort) -> bool:
        return s in self._sort_set

    def op(self, name: str) -> OperationSymbol:
        try:
            return self._ops[name]
        except KeyError:
            raise UnknownOperation(f"no operation named {name!r}") from None

    def __eq__(self, other):
        if not isinstance(other, Signature):
            return NotImplemented
        return self._sorts == other._sorts and self._ops == other._ops

    def __hash__(self):
        return hash((self._sorts, tuple(sorted(self._ops))))

    def __repr__(self):
        return f"Signature(sorts={[s.name for s in self._sorts]}, ops={list(self._ops)})"


class SortMap:
    """A mapping from source sorts to words over target sorts."""

    __slots__ = ("_source", "_target", "_map")

    def __init__(self, source: Iterable[Sort], target: Iterable[Sort], mapping: Mapping[Sort, Word]):
        self._source = tuple(dict.fromkeys(source))
        self._target = tuple(dict.fromkeys(target))
        target_set = frozenset(self._target)
        m: dict[Sort, Word] = {}
        for s in self._source:
            if s not in mapping:
                raise UnknownSort(f"sort map not defined on {s}")
            image = Word(mapping[s])
            for letter in image:
                if letter not in target_set:
                    raise UnknownSort(f"image letter {letter} of {s} not a target sort")
            m[s] = image
        self._map = m

    @property
    def source(self) -> tuple[Sort, ...]:
        return self._source

    @property
    def target(self) -> tuple[Sort, ...]:
        return self._target

    def __call__(self, s: Sort) -> Word:
        try:
            return self._map[s]
        except KeyError:
            raise UnknownSort(f"sort {s} outside the source of the sort map") from None

    def sharp(self, w: Word) -> Word:
        """Extension to words: the concatenation of the letter images."""
        out: list[Sort] = []
        for letter in w:
            out.extend(self(letter))
        return Word(out)

    def __eq__(self, other):
        if not isinstance(other, SortMap):
            return NotImplemented
        return (self._source, self._target, self._map) == (other._source, other._target, other._map)

    def __repr__(self):
        body = ", ".join(f"{s.name} -> {self._map[s]!r}" for s in self._source)
        return f"SortMap({body})"


def apply_sharp(phi: SortMap, w: Word) -> Word:
    """phi extended to a word, letter by letter."""
    return phi.sharp(w)


def identity_sort_map(sorts: Iterable[Sort]) -> SortMap:
    ss = tuple(sorts)
    return SortMap(ss, ss, {s: Word.of(s) for s in ss})


def _coproduct_var(x: Variable, i: int) -> str:
    return f"({x.name},{x.sort.name},{i})"


def coproduct_dagger(phi: SortMap, ctx: SortedSet) -> SortedSet:
    """The context with one variable (x, s, i) of sort phi(s)_i per variable
    x:s of ctx and position i in phi(s).  Order: ctx order, then position.
    """
    out: list[Variable] = []
    for x in ctx:
        image = phi(x.sort)
        out.extend(Variable(_coproduct_var(x, i), image[i]) for i in range(len(image)))
    return SortedSet(out)


def coproduct_block(phi: SortMap, ctx: SortedSet, coctx: SortedSet, x: Variable) -> tuple[Variable, ...]:
    """The block of coproduct variables belonging to x, resolved in coctx."""
    if x not in ctx:
        raise UnknownVariable(f"variable {x!r} not in context")
    image = phi(x.sort)
    return tuple(coctx.by_name(_coproduct_var(x, i)) for i in range(len(image)))


def block_offsets(phi: SortMap, w: Word) -> list[int]:
    """Start offsets of the per-letter blocks inside phi.sharp(w)."""
    offsets = [0]
    for letter in w:
        offsets.append(offsets[-1] + len(phi(letter)))
    return offsets
