"""Textual specification language: a line/brace keyword format for
signatures, equational specs, finite algebras, morphisms, and
transformations, with a canonical printer such that parse(print(w)) = w.

Grammar sketch (comments start with '#'):

    signature BR { sort s; op add : s s -> s; }
    spec BRax { use BR; equation comm : (s s) add(v0,v1) = add(v1,v0); }
    algebra Z2 { use BR; carrier s = 0 1; table add { row 0 0 -> 0; ... } }
    term t1 : BR (s s) = add(v0,v1);
    equation e1 : BR (s s) add(v0,v1) = add(v1,v0);
    morphism d : BA -> BR { sort s -> (s); op or -> ( add(add(v0,v1), mul(v0,v1)) ); }
    morphism dc = compose(d, e);
    morphism idBR = identity(BR);
    transformation L : dc => idBR { sort s -> ( v0 ); }

Identifiers are [A-Za-z_][A-Za-z0-9_]*; integer tokens are allowed as
algebra element labels; sort names may also be bracketed pair renderings
such as ((s s) s) wherever a sort is expected.  Names must be declared
before use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebras import FiniteAlgebra
from .errors import SpecSyntaxError, TypingError, UnresolvedName
from .kernel import (
    OperationSymbol,
    Signature,
    Sort,
    SortMap,
    SortedSet,
    Word,
    canonical_context,
)
from .morphisms import Polyderivator, compose_polyderivators, identity_polyderivator
from .terms import App, Equation, Term, TermFamily, Var
from .transformations import Transformation

_KEYWORDS = {
    "signature", "spec", "algebra", "term", "equation", "morphism", "transformation",
    "sort", "op", "use", "carrier", "table", "row", "compose", "identity",
}


@dataclass(frozen=True)
class Token:
    kind: str  # 'ident', 'int', or the punctuation itself
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if text.startswith("->", i):
            tokens.append(Token("->", "->", line, col))
            i += 2
            col += 2
            continue
        if text.startswith("=>", i):
            tokens.append(Token("=>", "=>", line, col))
            i += 2
            col += 2
            continue
        if c in "{}();:,=":
            tokens.append(Token(c, c, line, col))
            i += 1
            col += 1
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise SpecSyntaxError(f"unexpected character {c!r}", line, col)
    tokens.append(Token("eof", "", line, col))
    return tokens


class Specification:
    """A signature together with named equations over it."""

    __slots__ = ("signature_name", "signature", "equations", "free_flavor")

    def __init__(self, signature_name: str, signature: Signature,
                 equations: dict[str, Equation] | None = None, free_flavor=None):
        self.signature_name = signature_name
        self.signature = signature
        self.equations = dict(equations or {})
        self.free_flavor = free_flavor

    def __eq__(self, other):
        if not isinstance(other, Specification):
            return NotImplemented
        return (self.signature_name == other.signature_name
                and self.signature == other.signature
                and self.equations == other.equations)

    def __repr__(self):
        return f"Specification(over {self.signature_name}, {len(self.equations)} equations)"


@dataclass
class TermDecl:
    signature_name: str
    term: Term

    def __eq__(self, other):
        return (isinstance(other, TermDecl) and self.signature_name == other.signature_name
                and self.term == other.term)


@dataclass
class EquationDecl:
    signature_name: str
    equation: Equation

    def __eq__(self, other):
        return (isinstance(other, EquationDecl) and self.signature_name == other.signature_name
                and self.equation == other.equation)


@dataclass
class MorphismDecl:
    source_name: str
    target_name: str
    morphism: Polyderivator

    def __eq__(self, other):
        return (isinstance(other, MorphismDecl) and self.source_name == other.source_name
                and self.target_name == other.target_name and self.morphism == other.morphism)


@dataclass
class TransformationDecl:
    from_name: str
    to_name: str
    transformation: Transformation

    def __eq__(self, other):
        return (isinstance(other, TransformationDecl) and self.from_name == other.from_name
                and self.to_name == other.to_name
                and self.transformation == other.transformation)


class Workspace:
    """Named registries of every kind of entity a document can declare."""

    def __init__(self):
        self.signatures: dict[str, Signature] = {}
        self.specs: dict[str, Specification] = {}
        self.algebras: dict[str, tuple[str, FiniteAlgebra]] = {}
        self.terms: dict[str, TermDecl] = {}
        self.equations: dict[str, EquationDecl] = {}
        self.morphisms: dict[str, MorphismDecl] = {}
        self.transformations: dict[str, TransformationDecl] = {}

    def signature(self, name: str) -> Signature:
        return self._get(self.signatures, name, "signature")

    def spec(self, name: str) -> Specification:
        return self._get(self.specs, name, "spec")

    def algebra(self, name: str) -> FiniteAlgebra:
        return self._get(self.algebras, name, "algebra")[1]

    def morphism(self, name: str) -> Polyderivator:
        return self._get(self.morphisms, name, "morphism").morphism

    def transformation(self, name: str) -> Transformation:
        return self._get(self.transformations, name, "transformation").transformation

    def equation(self, name: str) -> Equation:
        if name in self.equations:
            return self.equations[name].equation
        for spec in self.specs.values():
            if name in spec.equations:
                return spec.equations[name]
        raise UnresolvedName(f"no equation named {name!r}")

    @staticmethod
    def _get(table, name, kind):
        try:
            return table[name]
        except KeyError:
            raise UnresolvedName(f"no {kind} named {name!r}") from None

    def __eq__(self, other):
        if not isinstance(other, Workspace):
            return NotImplemented
        return (self.signatures == other.signatures and self.specs == other.specs
                and self.algebras == other.algebras and self.terms == other.terms
                and self.equations == other.equations and self.morphisms == other.morphisms
                and self.transformations == other.transformations)


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ws = Workspace()

    # -- token plumbing

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.next()
        if tok.kind != kind:
            raise SpecSyntaxError(f"expected {kind!r}, found {tok.text!r}", tok.line, tok.column)
        return tok

    def expect_ident(self) -> Token:
        tok = self.next()
        if tok.kind != "ident":
            raise SpecSyntaxError(f"expected a name, found {tok.text!r}", tok.line, tok.column)
        return tok

    def fail(self, message: str):
        tok = self.peek()
        raise SpecSyntaxError(message, tok.line, tok.column)

    # -- sort trees: an identifier, or a bracketed pair rendering

    def parse_sort(self, sig: Signature | None) -> Sort:
        tok = self.peek()
        if tok.kind == "ident":
            self.next()
            sort = Sort(tok.text)
        elif tok.kind == "(":
            tree = self._parse_tree()
            sort = self._tree_to_sort(tree, tok)
        else:
            raise SpecSyntaxError(f"expected a sort, found {tok.text!r}", tok.line, tok.column)
        if sig is not None and not sig.has_sort(sort):
            raise SpecSyntaxError(f"unknown sort {sort.name!r}", tok.line, tok.column)
        return sort

    def _parse_tree(self):
        tok = self.next()
        if tok.kind == "ident":
            return tok.text
        if tok.kind != "(":
            raise SpecSyntaxError(f"expected a sort, found {tok.text!r}", tok.line, tok.column)
        items = []
        while self.peek().kind != ")":
            if self.peek().kind == "eof":
                raise SpecSyntaxError("unbalanced '(' in sort", tok.line, tok.column)
            items.append(self._parse_tree())
        self.next()
        return tuple(items)

    def _tree_to_sort(self, tree, tok: Token) -> Sort:
        def render(t) -> str:
            if isinstance(t, str):
                return t
            return "(" + " ".join(render(x) for x in t) + ")"

        if isinstance(tree, str):
            return Sort(tree)
        if len(tree) == 2:
            first, second = tree
            first_is_word = isinstance(first, tuple) and all(isinstance(x, str) for x in first)
            if first_is_word and isinstance(second, str):
                return Sort(render(tree))
            second_is_word = isinstance(second, tuple) and all(isinstance(x, str) for x in second)
            if first_is_word and second_is_word:
                return Sort(render(tree))
        raise SpecSyntaxError(f"{render(tree)!r} is not a sort", tok.line, tok.column)

    def parse_word(self, sig: Signature | None) -> Word:
        self.expect("(")
        letters = []
        while self.peek().kind != ")":
            letters.append(self.parse_sort(sig))
        self.next()
        return Word(letters)

    # -- terms

    def parse_term(self, sig: Signature, ctx: SortedSet) -> Term:
        tok = self.expect_ident()
        name = tok.text
        has_args = self.peek().kind == "("
        args: list[Term] = []
        if has_args:
            self.next()
            while self.peek().kind != ")":
                args.append(self.parse_term(sig, ctx))
                if self.peek().kind == ",":
                    self.next()
            self.next()
        if not has_args:
            # bare name: a context variable wins over a constant
            try:
                return Var(ctx, ctx.by_name(name))
            except Exception:
                pass
        if name in sig.ops:
            try:
                return App(sig.op(name), args, context=ctx)
            except TypingError as exc:
                raise SpecSyntaxError(str(exc), tok.line, tok.column) from None
            except Exception as exc:
                raise SpecSyntaxError(str(exc), tok.line, tok.column) from None
        raise SpecSyntaxError(f"unresolved name {name!r}", tok.line, tok.column)

    def parse_term_list(self, sig: Signature, ctx: SortedSet) -> list[Term]:
        self.expect("(")
        terms: list[Term] = []
        while self.peek().kind != ")":
            terms.append(self.parse_term(sig, ctx))
            if self.peek().kind == ",":
                self.next()
        self.next()
        return terms

    # -- blocks

    def parse_document(self) -> Workspace:
        while self.peek().kind != "eof":
            tok = self.expect_ident()
            if tok.text == "signature":
                self.parse_signature()
            elif tok.text == "spec":
                self.parse_spec()
            elif tok.text == "algebra":
                self.parse_algebra()
            elif tok.text == "term":
                self.parse_term_decl()
            elif tok.text == "equation":
                self.parse_equation_decl()
            elif tok.text == "morphism":
                self.parse_morphism()
            elif tok.text == "transformation":
                self.parse_transformation()
            else:
                raise SpecSyntaxError(f"unknown block kind {tok.text!r}", tok.line, tok.column)
        return self.ws

    def _declare(self, table: dict, name_tok: Token, value, kind: str):
        if name_tok.text in table:
            raise SpecSyntaxError(f"duplicate {kind} name {name_tok.text!r}",
                                  name_tok.line, name_tok.column)
        table[name_tok.text] = value

    def parse_signature(self):
        name = self.expect_ident()
        self.expect("{")
        sorts: list[Sort] = []
        ops: list[OperationSymbol] = []
        while self.peek().kind != "}":
            item = self.expect_ident()
            if item.text == "sort":
                sorts.append(self.parse_sort(None))
                self.expect(";")
            elif item.text == "op":
                op_name = self.expect_ident()
                self.expect(":")
                arity: list[Sort] = []
                while self.peek().kind != "->":
                    arity.append(self.parse_sort(None))
                self.expect("->")
                coarity = self.parse_sort(None)
                self.expect(";")
                ops.append(OperationSymbol(op_name.text, Word(arity), coarity))
            else:
                raise SpecSyntaxError(f"unexpected {item.text!r} in signature", item.line, item.column)
        self.expect("}")
        try:
            sig = Signature(sorts, ops)
        except Exception as exc:
            raise SpecSyntaxError(str(exc), name.line, name.column) from None
        self._declare(self.ws.signatures, name, sig, "signature")

    def _parse_use(self) -> tuple[str, Signature]:
        kw = self.expect_ident()
        if kw.text != "use":
            raise SpecSyntaxError("expected 'use <signature>;'", kw.line, kw.column)
        sig_name = self.expect_ident()
        self.expect(";")
        if sig_name.text not in self.ws.signatures:
            raise SpecSyntaxError(f"unknown signature {sig_name.text!r}",
                                  sig_name.line, sig_name.column)
        return sig_name.text, self.ws.signatures[sig_name.text]

    def _parse_named_equation(self, sig: Signature) -> tuple[Token, Equation]:
        eq_name = self.expect_ident()
        self.expect(":")
        word = self.parse_word(sig)
        ctx = canonical_context(word)
        lhs = self.parse_term(sig, ctx)
        self.expect("=")
        rhs = self.parse_term(sig, ctx)
        self.expect(";")
        try:
            return eq_name, Equation.of_terms(lhs, rhs)
        except Exception as exc:
            raise SpecSyntaxError(str(exc), eq_name.line, eq_name.column) from None

    def parse_spec(self):
        name = self.expect_ident()
        self.expect("{")
        sig_name, sig = self._parse_use()
        equations: dict[str, Equation] = {}
        while self.peek().kind != "}":
            item = self.expect_ident()
            if item.text != "equation":
                raise SpecSyntaxError(f"unexpected {item.text!r} in spec", item.line, item.column)
            eq_name, eq = self._parse_named_equation(sig)
            if eq_name.text in equations:
                raise SpecSyntaxError(f"duplicate equation name {eq_name.text!r}",
                                      eq_name.line, eq_name.column)
            equations[eq_name.text] = eq
        self.expect("}")
        self._declare(self.ws.specs, name, Specification(sig_name, sig, equations), "spec")

    def _parse_label(self) -> str:
        tok = self.next()
        if tok.kind not in ("ident", "int"):
            raise SpecSyntaxError(f"expected an element label, found {tok.text!r}",
                                  tok.line, tok.column)
        return tok.text

    def parse_algebra(self):
        name = self.expect_ident()
        self.expect("{")
        sig_name, sig = self._parse_use()
        carriers: dict[Sort, tuple] = {}
        tables: dict[str, dict[tuple, str]] = {}
        while self.peek().kind != "}":
            item = self.expect_ident()
            if item.text == "carrier":
                sort = self.parse_sort(sig)
                self.expect("=")
                labels: list[str] = []
                while self.peek().kind != ";":
                    labels.append(self._parse_label())
                self.next()
                carriers[sort] = tuple(labels)
            elif item.text == "table":
                op_name = self.expect_ident()
                if op_name.text not in sig.ops:
                    raise SpecSyntaxError(f"unknown operation {op_name.text!r}",
                                          op_name.line, op_name.column)
                self.expect("{")
                table: dict[tuple, str] = {}
                while self.peek().kind != "}":
                    row_kw = self.expect_ident()
                    if row_kw.text != "row":
                        raise SpecSyntaxError("expected 'row'", row_kw.line, row_kw.column)
                    args: list[str] = []
                    while self.peek().kind != "->":
                        args.append(self._parse_label())
                    self.expect("->")
                    out = self._parse_label()
                    self.expect(";")
                    table[tuple(args)] = out
                self.expect("}")
                tables[op_name.text] = table
            else:
                raise SpecSyntaxError(f"unexpected {item.text!r} in algebra", item.line, item.column)
        self.expect("}")
        try:
            algebra = FiniteAlgebra(sig, carriers, tables)
        except Exception as exc:
            raise SpecSyntaxError(f"in algebra {name.text!r}: {exc}", name.line, name.column) from None
        self._declare(self.ws.algebras, name, (sig_name, algebra), "algebra")

    def parse_term_decl(self):
        name = self.expect_ident()
        self.expect(":")
        sig_name = self.expect_ident()
        if sig_name.text not in self.ws.signatures:
            raise SpecSyntaxError(f"unknown signature {sig_name.text!r}",
                                  sig_name.line, sig_name.column)
        sig = self.ws.signatures[sig_name.text]
        word = self.parse_word(sig)
        self.expect("=")
        term = self.parse_term(sig, canonical_context(word))
        self.expect(";")
        self._declare(self.ws.terms, name, TermDecl(sig_name.text, term), "term")

    def parse_equation_decl(self):
        name = self.expect_ident()
        self.expect(":")
        sig_name = self.expect_ident()
        if sig_name.text not in self.ws.signatures:
            raise SpecSyntaxError(f"unknown signature {sig_name.text!r}",
                                  sig_name.line, sig_name.column)
        sig = self.ws.signatures[sig_name.text]
        word = self.parse_word(sig)
        ctx = canonical_context(word)
        lhs = self.parse_term(sig, ctx)
        self.expect("=")
        rhs = self.parse_term(sig, ctx)
        self.expect(";")
        try:
            eq = Equation.of_terms(lhs, rhs)
        except Exception as exc:
            raise SpecSyntaxError(str(exc), name.line, name.column) from None
        self._declare(self.ws.equations, name, EquationDecl(sig_name.text, eq), "equation")

    def parse_morphism(self):
        name = self.expect_ident()
        tok = self.next()
        if tok.kind == "=":
            kw = self.expect_ident()
            if kw.text == "compose":
                self.expect("(")
                outer = self.expect_ident()
                self.expect(",")
                inner = self.expect_ident()
                self.expect(")")
                self.expect(";")
                outer_decl = self._morphism_decl(outer)
                inner_decl = self._morphism_decl(inner)
                try:
                    pd = compose_polyderivators(outer_decl.morphism, inner_decl.morphism)
                except Exception as exc:
                    raise SpecSyntaxError(str(exc), kw.line, kw.column) from None
                decl = MorphismDecl(inner_decl.source_name, outer_decl.target_name, pd)
            elif kw.text == "identity":
                self.expect("(")
                sig_name = self.expect_ident()
                self.expect(")")
                self.expect(";")
                if sig_name.text not in self.ws.signatures:
                    raise SpecSyntaxError(f"unknown signature {sig_name.text!r}",
                                          sig_name.line, sig_name.column)
                pd = identity_polyderivator(self.ws.signatures[sig_name.text])
                decl = MorphismDecl(sig_name.text, sig_name.text, pd)
            else:
                raise SpecSyntaxError("expected compose(...) or identity(...)", kw.line, kw.column)
            self._declare(self.ws.morphisms, name, decl, "morphism")
            return
        if tok.kind != ":":
            raise SpecSyntaxError("expected ':' or '=' after the morphism name", tok.line, tok.column)
        src_name = self.expect_ident()
        self.expect("->")
        tgt_name = self.expect_ident()
        for n in (src_name, tgt_name):
            if n.text not in self.ws.signatures:
                raise SpecSyntaxError(f"unknown signature {n.text!r}", n.line, n.column)
        source = self.ws.signatures[src_name.text]
        target = self.ws.signatures[tgt_name.text]
        self.expect("{")
        sort_images: dict[Sort, Word] = {}
        op_items: list[tuple[Token, object]] = []
        while self.peek().kind != "}":
            item = self.expect_ident()
            if item.text == "sort":
                s = self.parse_sort(source)
                self.expect("->")
                w = self.parse_word(target)
                self.expect(";")
                sort_images[s] = w
            elif item.text == "op":
                op_name = self.expect_ident()
                if op_name.text not in source.ops:
                    raise SpecSyntaxError(f"unknown source operation {op_name.text!r}",
                                          op_name.line, op_name.column)
                mark = self.pos
                self.expect("->")
                # family parsing is deferred until the sort map is complete
                depth = 0
                while True:
                    t = self.next()
                    if t.kind == "eof":
                        raise SpecSyntaxError("unterminated op item", op_name.line, op_name.column)
                    if t.kind == "(":
                        depth += 1
                    elif t.kind == ")":
                        depth -= 1
                    elif t.kind == ";" and depth == 0:
                        break
                op_items.append((op_name, mark))
            else:
                raise SpecSyntaxError(f"unexpected {item.text!r} in morphism", item.line, item.column)
        self.expect("}")
        end = self.pos
        try:
            phi = SortMap(source.sorts, target.sorts, sort_images)
        except Exception as exc:
            raise SpecSyntaxError(str(exc), name.line, name.column) from None
        images: dict[str, TermFamily] = {}
        for op_name, mark in op_items:
            op = source.op(op_name.text)
            self.pos = mark
            self.expect("->")
            ctx_word = phi.sharp(op.arity)
            terms = self.parse_term_list(target, canonical_context(ctx_word))
            self.expect(";")
            try:
                images[op_name.text] = TermFamily(ctx_word, phi(op.coarity), terms)
            except Exception as exc:
                raise SpecSyntaxError(str(exc), op_name.line, op_name.column) from None
        self.pos = end
        try:
            pd = Polyderivator(source, target, phi, images)
        except Exception as exc:
            raise SpecSyntaxError(str(exc), name.line, name.column) from None
        self._declare(self.ws.morphisms, name, MorphismDecl(src_name.text, tgt_name.text, pd),
                      "morphism")

    def _morphism_decl(self, tok: Token) -> MorphismDecl:
        if tok.text not in self.ws.morphisms:
            raise SpecSyntaxError(f"unknown morphism {tok.text!r}", tok.line, tok.column)
        return self.ws.morphisms[tok.text]

    def parse_transformation(self):
        name = self.expect_ident()
        self.expect(":")
        from_name = self.expect_ident()
        self.expect("=>")
        to_name = self.expect_ident()
        from_decl = self._morphism_decl(from_name)
        to_decl = self._morphism_decl(to_name)
        source_pd, target_pd = from_decl.morphism, to_decl.morphism
        self.expect("{")
        xi: dict[Sort, TermFamily] = {}
        while self.peek().kind != "}":
            item = self.expect_ident()
            if item.text != "sort":
                raise SpecSyntaxError(f"unexpected {item.text!r} in transformation",
                                      item.line, item.column)
            s = self.parse_sort(source_pd.source)
            self.expect("->")
            ctx = canonical_context(source_pd.phi(s))
            terms = self.parse_term_list(source_pd.target, ctx)
            self.expect(";")
            try:
                xi[s] = TermFamily(source_pd.phi(s), target_pd.phi(s), terms)
            except Exception as exc:
                raise SpecSyntaxError(str(exc), item.line, item.column) from None
        self.expect("}")
        try:
            tr = Transformation(source_pd, target_pd, xi)
        except Exception as exc:
            raise SpecSyntaxError(str(exc), name.line, name.column) from None
        self._declare(self.ws.transformations, name,
                      TransformationDecl(from_name.text, to_name.text, tr), "transformation")


def parse(text: str) -> Workspace:
    """Parse a document into a fully resolved workspace."""
    return _Parser(text).parse_document()


# ---------------------------------------------------------------------------
# canonical printer


def render_term(term: Term) -> str:
    if isinstance(term, Var):
        return term.variable.name
    if not term.args:
        return term.op.name
    return f"{term.op.name}({', '.join(render_term(a) for a in term.args)})"


def _render_word_spaced(w: Word) -> str:
    return "(" + " ".join(s.name for s in w) + ")"


def _render_equation(name: str, eq: Equation, prefix: str) -> str:
    ys = eq.target.variables
    if len(ys) != 1:
        raise TypingError(f"equation {name!r} is not printable (general target context)")
    word = eq.source.word()
    lhs = render_term(eq.lhs(ys[0]))
    rhs = render_term(eq.rhs(ys[0]))
    return f"{prefix}equation {name} : {_render_word_spaced(word)} {lhs} = {rhs};"


def print_workspace(ws: Workspace) -> str:
    """Canonical rendering; parse(print_workspace(ws)) == ws."""
    out: list[str] = []
    for name, sig in ws.signatures.items():
        out.append(f"signature {name} {{")
        for s in sig.sorts:
            out.append(f"  sort {s.name};")
        for op_name, op in sig.ops.items():
            arity = " ".join(s.name for s in op.arity)
            arity = arity + " " if arity else ""
            out.append(f"  op {op_name} : {arity}-> {op.coarity.name};")
        out.append("}")
    for name, spec in ws.specs.items():
        out.append(f"spec {name} {{")
        out.append(f"  use {spec.signature_name};")
        for eq_name, eq in spec.equations.items():
            out.append(_render_equation(eq_name, eq, "  "))
        out.append("}")
    for name, (sig_name, algebra) in ws.algebras.items():
        out.append(f"algebra {name} {{")
        out.append(f"  use {sig_name};")
        for s in algebra.signature.sorts:
            labels = " ".join(str(e) for e in algebra.carriers[s])
            labels = f" {labels}" if labels else ""
            out.append(f"  carrier {s.name} ={labels};")
        for op_name in algebra.signature.ops:
            out.append(f"  table {op_name} {{")
            from .algebras import rows

            op = algebra.signature.op(op_name)
            for row in rows(algebra.carriers, op.arity):
                args = " ".join(str(e) for e in row)
                args = args + " " if args else ""
                out.append(f"    row {args}-> {algebra.tables[op_name][row]};")
            out.append("  }")
        out.append("}")
    for name, decl in ws.terms.items():
        word = decl.term.context.word()
        out.append(f"term {name} : {decl.signature_name} {_render_word_spaced(word)} "
                   f"= {render_term(decl.term)};")
    for name, decl in ws.equations.items():
        eq = decl.equation
        ys = eq.target.variables
        word = eq.source.word()
        out.append(f"equation {name} : {decl.signature_name} {_render_word_spaced(word)} "
                   f"{render_term(eq.lhs(ys[0]))} = {render_term(eq.rhs(ys[0]))};")
    for name, decl in ws.morphisms.items():
        pd = decl.morphism
        out.append(f"morphism {name} : {decl.source_name} -> {decl.target_name} {{")
        for s in pd.source.sorts:
            out.append(f"  sort {s.name} -> {_render_word_spaced(pd.phi(s))};")
        for op_name in pd.source.ops:
            fam = pd.images[op_name]
            body = ", ".join(render_term(t) for t in fam.components)
            body = f" {body} " if body else " "
            out.append(f"  op {op_name} -> ({body});")
        out.append("}")
    for name, decl in ws.transformations.items():
        tr = decl.transformation
        out.append(f"transformation {name} : {decl.from_name} => {decl.to_name} {{")
        for s in tr.source_pd.source.sorts:
            fam = tr.xi[s]
            body = ", ".join(render_term(t) for t in fam.components)
            body = f" {body} " if body else " "
            out.append(f"  sort {s.name} -> ({body});")
        out.append("}")
    return "\n".join(out) + ("\n" if out else "")


def workspace_of_generated(spec, sig_name: str, spec_name: str) -> Workspace:
    """Wrap a generated clone spec as a printable workspace."""
    ws = Workspace()
    ws.signatures[sig_name] = spec.signature
    ws.specs[spec_name] = Specification(sig_name, spec.signature, dict(spec.equations),
                                        free_flavor=spec.free_flavor)
    return ws
