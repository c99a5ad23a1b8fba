"""A small text format for computad presentations, 3-computads and morphisms.

Example::

    # the computad A
    computad2 paper_A {
      objects: x;
      gens2: a1: id(x) => id(x), a2: id(x) => id(x);
    }

    com3 M over paper_A {
      gens3: u: id(id(x)) => v(a1, a2);
    }

    morphism alpha: paper_A -> paper_C {
      vertices: x -> x;
      gens2: a1 -> c, a2 -> c;
    }

A path is ``id(v)`` or a juxtaposition of edge names. A bare vertex name is
read as its identity path. A 2-cell is a generator name, ``id(path)``,
``v(t, u)`` (vertical) or ``h(t, u)`` (horizontal). Names are identifiers, or
bracketed pair labels such as ``<a1,b1>`` as printed for products. ``#``
starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .cells2 import Cell2Term, Gen, HComp, Id1, IllTyped, NotEHClass, VComp, cell_term, normalize
from .computad import (
    Com3Object,
    Computad2,
    Computad2Morphism,
    ParallelPair2,
    com3_errors,
    computad2_errors,
    is_computad2_morphism,
)
from .finset import FinSet
from .freecat import NotComposable, Path


class DslError(Exception):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line else ""
        super().__init__(f"{where}{message}")


class DslSyntaxError(DslError):
    pass


class UnknownReference(DslError):
    pass


class DslValidationError(DslError):
    pass


# -- tokens --------------------------------------------------------------------

_PUNCT = ("->", "=>", "{", "}", ":", ";", ",", "(", ")")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_SPACE = re.compile(r"(?:\s+|#[^\n]*)+")


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "punct" or "eof"
    text: str
    line: int
    col: int


def _bracket_name(src: str, i: int) -> int:
    depth = 0
    for j in range(i, len(src)):
        if src[j] == "<":
            depth += 1
        elif src[j] == ">":
            depth -= 1
            if depth == 0:
                return j + 1
        elif src[j] in "\n;{}":
            break
    return -1


def tokenize(src: str) -> list[Token]:
    tokens = []
    i, line, line_start = 0, 1, 0

    def advance(j):
        nonlocal line, line_start
        newlines = src.count("\n", i, j)
        if newlines:
            line += newlines
            line_start = src.rindex("\n", i, j) + 1
        return j

    while i < len(src):
        m = _SPACE.match(src, i)
        if m:
            i = advance(m.end())
            continue
        col = i - line_start + 1
        punct = next((p for p in _PUNCT if src.startswith(p, i)), None)
        if punct:
            tokens.append(Token("punct", punct, line, col))
            i += len(punct)
            continue
        m = _IDENT.match(src, i)
        if m:
            tokens.append(Token("name", m.group(), line, col))
            i = m.end()
            continue
        if src[i] == "<":
            j = _bracket_name(src, i)
            if j < 0:
                raise DslSyntaxError("unterminated bracketed name", line, col)
            tokens.append(Token("name", src[i:j], line, col))
            i = j
            continue
        raise DslSyntaxError(f"unexpected character {src[i]!r}", line, col)
    tokens.append(Token("eof", "", line, i - line_start + 1))
    return tokens


# -- raw syntax ------------------------------------------------------------------


@dataclass(frozen=True)
class RawPath:
    """``id(v)`` when ``identity_at`` is set, otherwise a list of names."""

    names: tuple
    identity_at: Optional[str]
    tok: Token


@dataclass
class DslDocument:
    computads: dict[str, Computad2] = field(default_factory=dict)
    com3: dict[str, tuple[str, Com3Object]] = field(default_factory=dict)
    morphisms: dict[str, tuple[str, str, Computad2Morphism]] = field(default_factory=dict)
    positions: dict[str, tuple[int, int]] = field(default_factory=dict, compare=False)

    def names(self) -> list[str]:
        return [*self.computads, *self.com3, *self.morphisms]

    def __len__(self):
        return len(self.computads) + len(self.com3) + len(self.morphisms)


class _Parser:
    def __init__(self, src: str, env: dict[str, Computad2]):
        self.tokens = tokenize(src)
        self.pos = 0
        self.env = dict(env)
        self.doc = DslDocument()

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind != "eof"

    def at_call(self, text: str) -> bool:
        nxt = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
        return self.at(text) and nxt is not None and nxt.text == "("

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise DslSyntaxError(
                f"expected {text!r}, found {self.tok.text or 'end of input'!r}",
                self.tok.line,
                self.tok.col,
            )
        t = self.tok
        self.pos += 1
        return t

    def name(self) -> Token:
        if self.tok.kind != "name":
            raise DslSyntaxError(
                f"expected a name, found {self.tok.text or 'end of input'!r}",
                self.tok.line,
                self.tok.col,
            )
        t = self.tok
        self.pos += 1
        return t

    def listing(self, item):
        """Comma-separated items up to ``;`` (possibly none)."""
        out = []
        if not self.at(";"):
            out.append(item())
            while self.at(","):
                self.pos += 1
                out.append(item())
        self.expect(";")
        return out

    def declare(self, tok: Token) -> None:
        if tok.text in self.doc.names():
            raise DslValidationError(f"duplicate name {tok.text!r}", tok.line, tok.col)
        self.doc.positions[tok.text] = (tok.line, tok.col)

    def lookup_computad(self, tok: Token) -> Computad2:
        if tok.text not in self.env:
            raise UnknownReference(f"unknown computad {tok.text!r}", tok.line, tok.col)
        return self.env[tok.text]

    # grammar
    def document(self) -> DslDocument:
        while self.tok.kind != "eof":
            if self.at("computad2"):
                self.computad2()
            elif self.at("com3"):
                self.com3()
            elif self.at("morphism"):
                self.morphism()
            else:
                raise DslSyntaxError(
                    f"expected 'computad2', 'com3' or 'morphism', found {self.tok.text!r}",
                    self.tok.line,
                    self.tok.col,
                )
        return self.doc

    def sections(self, allowed: tuple[str, ...], body) -> None:
        self.expect("{")
        seen = set()
        while not self.at("}"):
            t = self.name()
            if t.text not in allowed:
                raise DslSyntaxError(
                    f"unknown section {t.text!r} (expected one of {', '.join(allowed)})",
                    t.line,
                    t.col,
                )
            if t.text in seen:
                raise DslSyntaxError(f"section {t.text!r} given twice", t.line, t.col)
            seen.add(t.text)
            self.expect(":")
            body(t.text)
        self.expect("}")

    def path(self) -> RawPath:
        start = self.tok
        if self.at_call("id"):
            self.pos += 1
            self.expect("(")
            v = self.name()
            self.expect(")")
            return RawPath((), v.text, start)
        names = [self.name().text]
        while self.tok.kind == "name" and not self.at_call("id"):
            names.append(self.name().text)
        return RawPath(tuple(names), None, start)

    def cell(self) -> tuple[Cell2Term, Token]:
        start = self.tok
        if self.at_call("id"):
            self.pos += 1
            self.expect("(")
            p = self.path()
            self.expect(")")
            return Id1(p), start  # resolved later
        for ctor, cls in (("v", VComp), ("h", HComp)):
            if self.at_call(ctor):
                self.pos += 1
                self.expect("(")
                a, _ = self.cell()
                self.expect(",")
                b, _ = self.cell()
                self.expect(")")
                return cls(a, b), start
        return Gen(self.name().text), start

    def computad2(self) -> None:
        self.expect("computad2")
        name = self.name()
        self.declare(name)
        objects: list[str] = []
        edges: dict[str, tuple[str, str]] = {}
        gens: list[tuple[Token, RawPath, RawPath]] = []

        def edge():
            e = self.name()
            self.expect(":")
            s = self.name()
            self.expect("->")
            t = self.name()
            if e.text in edges:
                raise DslValidationError(f"duplicate edge {e.text!r}", e.line, e.col)
            edges[e.text] = (s.text, t.text)
            return e, s, t

        def gen():
            g = self.name()
            self.expect(":")
            s = self.path()
            self.expect("=>")
            t = self.path()
            gens.append((g, s, t))

        def body(section):
            if section == "objects":
                objects.extend(t.text for t in self.listing(self.name))
            elif section == "edges":
                edge_toks.extend(self.listing(edge))
            else:
                self.listing(gen)

        edge_toks: list = []
        self.sections(("objects", "edges", "gens2"), body)
        for _, s, t in edge_toks:
            for v in (s, t):
                if v.text not in objects:
                    raise UnknownReference(f"unknown vertex {v.text!r}", v.line, v.col)
        try:
            skeleton_only = Computad2.build(objects, edges, {})
        except ValueError as exc:
            raise DslValidationError(str(exc), name.line, name.col) from None
        seen = set()
        gens2 = {}
        for g, s, t in gens:
            if g.text in seen:
                raise DslValidationError(f"duplicate 2-indet {g.text!r}", g.line, g.col)
            seen.add(g.text)
            gens2[g.text] = (self.resolve_path(s, skeleton_only), self.resolve_path(t, skeleton_only))
        K = Computad2.build(objects, edges, gens2)
        errors = computad2_errors(K)
        if errors:
            raise DslValidationError(f"{name.text}: {errors[0]}", name.line, name.col)
        self.env[name.text] = K
        self.doc.computads[name.text] = K

    def resolve_path(self, p: RawPath, K: Computad2) -> Path:
        g = K.skeleton
        if p.identity_at is not None:
            if p.identity_at not in g.vertices:
                raise UnknownReference(f"unknown vertex {p.identity_at!r}", p.tok.line, p.tok.col)
            return Path.identity(p.identity_at)
        if len(p.names) == 1 and p.names[0] in g.vertices and p.names[0] not in g.edges:
            return Path.identity(p.names[0])
        for e in p.names:
            if e not in g.edges:
                raise UnknownReference(f"unknown edge {e!r}", p.tok.line, p.tok.col)
        try:
            return g.path(g.src(p.names[0]), *p.names)
        except NotComposable as exc:
            raise DslValidationError(str(exc), p.tok.line, p.tok.col) from None

    def resolve_cell(self, t: Cell2Term, K: Computad2) -> Cell2Term:
        if isinstance(t, Id1):
            return Id1(self.resolve_path(t.path, K))
        if isinstance(t, VComp):
            return VComp(self.resolve_cell(t.first, K), self.resolve_cell(t.second, K))
        if isinstance(t, HComp):
            return HComp(self.resolve_cell(t.left, K), self.resolve_cell(t.right, K))
        return t

    def com3(self) -> None:
        self.expect("com3")
        name = self.name()
        self.declare(name)
        self.expect("over")
        base_tok = self.name()
        base = self.lookup_computad(base_tok)
        bounds: dict[str, ParallelPair2] = {}

        def gen():
            u = self.name()
            self.expect(":")
            s, stok = self.cell()
            self.expect("=>")
            t, ttok = self.cell()
            if u.text in bounds:
                raise DslValidationError(f"duplicate 3-indet {u.text!r}", u.line, u.col)
            cells = []
            for term, tok in ((s, stok), (t, ttok)):
                try:
                    cells.append(normalize(self.resolve_cell(term, base), base))
                except NotEHClass as exc:
                    raise DslValidationError(str(exc), tok.line, tok.col) from None
                except (IllTyped, KeyError) as exc:
                    raise DslValidationError(f"ill-typed cell: {exc}", tok.line, tok.col) from None
            try:
                bounds[u.text] = ParallelPair2(*cells)
            except ValueError as exc:
                raise DslValidationError(f"{u.text}: {exc}", u.line, u.col) from None

        self.sections(("gens3",), lambda _: self.listing(gen))
        M = Com3Object(base, FinSet(bounds), bounds)
        errors = com3_errors(M)
        if errors:
            raise DslValidationError(f"{name.text}: {errors[0]}", name.line, name.col)
        self.doc.com3[name.text] = (base_tok.text, M)

    def morphism(self) -> None:
        self.expect("morphism")
        name = self.name()
        self.declare(name)
        self.expect(":")
        src_tok = self.name()
        self.expect("->")
        tgt_tok = self.name()
        A, B = self.lookup_computad(src_tok), self.lookup_computad(tgt_tok)
        maps: dict[str, dict[str, str]] = {"vertices": {}, "edges": {}, "gens2": {}}

        def body(section):
            def pair():
                a = self.name()
                self.expect("->")
                b = self.name()
                maps[section][a.text] = b.text

            self.listing(pair)

        self.sections(("vertices", "edges", "gens2"), body)
        vmap, emap, gmap = maps["vertices"], maps["edges"], maps["gens2"]
        if not is_computad2_morphism(vmap, emap, gmap, A, B):
            raise DslValidationError(
                f"{name.text} is not a computad map {src_tok.text} -> {tgt_tok.text}",
                name.line,
                name.col,
            )
        f = Computad2Morphism.from_maps(A, B, vmap, emap, gmap)
        self.doc.morphisms[name.text] = (src_tok.text, tgt_tok.text, f)


def parse_dsl(source: str, env: Optional[dict[str, Computad2]] = None) -> DslDocument:
    """Parse and validate a document.

    ``env`` supplies computads the document may refer to; declarations in the
    document shadow them.
    """
    return _Parser(source, env or {}).document()


def parse_cell(source: str, K: Computad2) -> Cell2Term:
    p = _Parser(source, {})
    term, _ = p.cell()
    if p.tok.kind != "eof":
        raise DslSyntaxError(f"trailing input {p.tok.text!r}", p.tok.line, p.tok.col)
    try:
        return p.resolve_cell(term, K)
    except UnknownReference:
        raise
    except ValueError as exc:
        raise DslValidationError(str(exc)) from None


# -- printing --------------------------------------------------------------------


def format_path(p: Path) -> str:
    return f"id({p.start})" if p.is_identity else " ".join(p.edges)


def format_cell(t: Cell2Term) -> str:
    if isinstance(t, Gen):
        return t.name
    if isinstance(t, Id1):
        return f"id({format_path(t.path)})"
    if isinstance(t, VComp):
        return f"v({format_cell(t.first)}, {format_cell(t.second)})"
    return f"h({format_cell(t.left)}, {format_cell(t.right)})"


def format_computad2(name: str, K: Computad2) -> str:
    lines = [f"computad2 {name} {{", f"  objects: {', '.join(K.vertices)};"]
    if len(K.edges):
        edges = ", ".join(f"{e}: {K.skeleton.src(e)} -> {K.skeleton.tgt(e)}" for e in K.edges)
        lines.append(f"  edges: {edges};")
    if len(K.indets2):
        gens = ", ".join(
            f"{a}: {format_path(K.boundary2[a].src1)} => {format_path(K.boundary2[a].tgt1)}"
            for a in K.indets2
        )
        lines.append(f"  gens2: {gens};")
    lines.append("}")
    return "\n".join(lines)


def format_com3(name: str, base_name: str, M: Com3Object) -> str:
    lines = [f"com3 {name} over {base_name} {{"]
    if len(M.indets3):
        gens = ", ".join(
            f"{u}: {format_cell(cell_term(M.boundary3[u].first))}"
            f" => {format_cell(cell_term(M.boundary3[u].second))}"
            for u in M.indets3
        )
        lines.append(f"  gens3: {gens};")
    lines.append("}")
    return "\n".join(lines)


def format_morphism(name: str, src: str, tgt: str, f: Computad2Morphism) -> str:
    lines = [f"morphism {name}: {src} -> {tgt} {{"]
    for section, fn in (
        ("vertices", f.on_graph.on_vertices),
        ("edges", f.on_graph.on_edges),
        ("gens2", f.on_indets2),
    ):
        if len(fn.dom):
            lines.append(f"  {section}: {', '.join(f'{a} -> {b}' for a, b in fn.items())};")
    lines.append("}")
    return "\n".join(lines)


def print_dsl(doc: DslDocument) -> str:
    blocks = [format_computad2(n, K) for n, K in doc.computads.items()]
    blocks += [format_com3(n, base, M) for n, (base, M) in doc.com3.items()]
    blocks += [format_morphism(n, s, t, f) for n, (s, t, f) in doc.morphisms.items()]
    return "\n\n".join(blocks) + ("\n" if blocks else "")
