"""2-cell terms of a free 2-category and their Eckmann-Hilton normal forms.

A term is built from generators, identity 2-cells on paths, and vertical and
horizontal composition. Equality of cells is only decided in the
Eckmann-Hilton fragment: no 1-indets, and every 2-indet goes from an identity
1-cell to itself. There the interchange law makes both compositions agree and
commute, so a cell is determined by its vertex and the multiset of generator
occurrences.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import TYPE_CHECKING, Iterator, Union

from .freecat import NotComposable, Path, path_compose

if TYPE_CHECKING:
    from .computad import Computad2


class UnknownGenerator(KeyError):
    pass


class IllTyped(ValueError):
    pass


class IllTypedVComp(IllTyped):
    pass


class IllTypedHComp(IllTyped):
    pass


class NotEHClass(ValueError):
    pass


@dataclass(frozen=True)
class Gen:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Id1:
    path: Path

    def __str__(self):
        return f"id({self.path})"


@dataclass(frozen=True)
class VComp:
    """``first`` followed vertically by ``second``."""

    first: "Cell2Term"
    second: "Cell2Term"

    def __str__(self):
        return f"v({self.first}, {self.second})"


@dataclass(frozen=True)
class HComp:
    left: "Cell2Term"
    right: "Cell2Term"

    def __str__(self):
        return f"h({self.left}, {self.right})"


Cell2Term = Union[Gen, Id1, VComp, HComp]


@dataclass(frozen=True)
class Boundary2:
    """Source and target 1-cells of a 2-cell.

    Parallelism is checked when a presentation is validated, so that a bad
    declaration can be reported with its name.
    """

    src1: Path
    tgt1: Path

    @property
    def is_parallel(self) -> bool:
        return self.src1.start == self.tgt1.start and self.src1.end == self.tgt1.end


@dataclass(frozen=True, order=True)
class EHNormalForm:
    """Vertex plus sorted ``(generator, multiplicity)`` pairs."""

    at_vertex: str
    content: tuple = ()

    @classmethod
    def of(cls, vertex: str, names) -> "EHNormalForm":
        return cls(vertex, tuple(sorted(Counter(names).items())))

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.content)

    def names(self) -> list[str]:
        """Generator occurrences with repetition, sorted."""
        return [n for n, m in self.content for _ in range(m)]

    def __add__(self, other: "EHNormalForm") -> "EHNormalForm":
        if self.at_vertex != other.at_vertex:
            raise IllTyped("cells live at different vertices")
        return EHNormalForm.of(self.at_vertex, self.names() + other.names())

    def __str__(self):
        if not self.content:
            return f"id(id({self.at_vertex}))"
        return "{" + ", ".join(self.names()) + "}"


def boundary(t: Cell2Term, K: "Computad2") -> Boundary2:
    if isinstance(t, Gen):
        if t.name not in K.boundary2:
            raise UnknownGenerator(t.name)
        return K.boundary2[t.name]
    if isinstance(t, Id1):
        if not K.skeleton.contains_path(t.path):
            raise IllTyped(f"{t.path} is not a path of the skeleton")
        return Boundary2(t.path, t.path)
    if isinstance(t, VComp):
        b1, b2 = boundary(t.first, K), boundary(t.second, K)
        if b1.tgt1 != b2.src1:
            raise IllTypedVComp(f"target {b1.tgt1} does not match source {b2.src1} in {t}")
        return Boundary2(b1.src1, b2.tgt1)
    if isinstance(t, HComp):
        b1, b2 = boundary(t.left, K), boundary(t.right, K)
        try:
            return Boundary2(path_compose(b1.src1, b2.src1), path_compose(b1.tgt1, b2.tgt1))
        except NotComposable as exc:
            raise IllTypedHComp(f"{t}: {exc}") from None
    raise TypeError(f"not a 2-cell term: {t!r}")


def is_eh_class(K: "Computad2") -> bool:
    if len(K.skeleton.edges):
        return False
    return all(b.src1.is_identity and b.tgt1.is_identity for b in K.boundary2.values())


def _require_eh(K: "Computad2") -> None:
    if not is_eh_class(K):
        raise NotEHClass("cell equality is only decided in the Eckmann-Hilton fragment")


def generators(t: Cell2Term) -> Iterator[str]:
    if isinstance(t, Gen):
        yield t.name
    elif isinstance(t, VComp):
        yield from generators(t.first)
        yield from generators(t.second)
    elif isinstance(t, HComp):
        yield from generators(t.left)
        yield from generators(t.right)


def normalize(t: Cell2Term, K: "Computad2") -> EHNormalForm:
    _require_eh(K)
    b = boundary(t, K)
    return EHNormalForm.of(b.src1.start, generators(t))


def eq_cells(t: Cell2Term, u: Cell2Term, K: "Computad2") -> bool:
    return normalize(t, K) == normalize(u, K)


def indets_at(K: "Computad2", v: str) -> list[str]:
    return [a for a in K.indets2 if K.boundary2[a].src1.start == v]


def enumerate_cells(K: "Computad2", k: int) -> list[list[EHNormalForm]]:
    """All cells of degree <= k; entry ``n`` holds the degree-``n`` cells.

    Within a degree, cells are ordered by vertex, then as
    ``combinations_with_replacement`` over the indets in declaration order.
    """
    _require_eh(K)
    graded: list[list[EHNormalForm]] = [[] for _ in range(k + 1)]
    for v in K.skeleton.vertices:
        gens = indets_at(K, v)
        for n in range(k + 1):
            if n and not gens:
                continue
            graded[n].extend(EHNormalForm.of(v, c) for c in combinations_with_replacement(gens, n))
    return graded


def cells_up_to(K: "Computad2", k: int) -> list[EHNormalForm]:
    return [c for level in enumerate_cells(K, k) for c in level]


def cell_term(nf: EHNormalForm) -> Cell2Term:
    """A canonical term denoting ``nf``: a left-nested vertical composite."""
    names = nf.names()
    if not names:
        return Id1(Path.identity(nf.at_vertex))
    t: Cell2Term = Gen(names[0])
    for n in names[1:]:
        t = VComp(t, Gen(n))
    return t


def interchange_rewrites(t: Cell2Term) -> Iterator[tuple[str, Cell2Term]]:
    """Every term reachable from ``t`` by one rewrite at one position.

    Rules: associativity and unit laws for both compositions, the interchange
    law in both directions, and (valid only in the Eckmann-Hilton fragment)
    commutation of either composition and exchange of vertical with
    horizontal composition.
    """
    yield from _rewrites_here(t)
    if isinstance(t, VComp):
        for rule, s in interchange_rewrites(t.first):
            yield rule, VComp(s, t.second)
        for rule, s in interchange_rewrites(t.second):
            yield rule, VComp(t.first, s)
    elif isinstance(t, HComp):
        for rule, s in interchange_rewrites(t.left):
            yield rule, HComp(s, t.right)
        for rule, s in interchange_rewrites(t.right):
            yield rule, HComp(t.left, s)


def _rewrites_here(t: Cell2Term) -> Iterator[tuple[str, Cell2Term]]:
    if isinstance(t, VComp):
        a, b = t.first, t.second
        yield "v-commute", VComp(b, a)
        yield "v-to-h", HComp(a, b)
        if isinstance(a, VComp):
            yield "v-assoc", VComp(a.first, VComp(a.second, b))
        if isinstance(b, VComp):
            yield "v-assoc", VComp(VComp(a, b.first), b.second)
        if isinstance(a, Id1):
            yield "v-unit", b
        if isinstance(b, Id1):
            yield "v-unit", a
        if isinstance(a, HComp) and isinstance(b, HComp):
            yield "interchange", HComp(VComp(a.left, b.left), VComp(a.right, b.right))
    elif isinstance(t, HComp):
        a, b = t.left, t.right
        yield "h-commute", HComp(b, a)
        yield "h-to-v", VComp(a, b)
        if isinstance(a, HComp):
            yield "h-assoc", HComp(a.left, HComp(a.right, b))
        if isinstance(b, HComp):
            yield "h-assoc", HComp(HComp(a, b.left), b.right)
        if isinstance(a, Id1) and a.path.is_identity:
            yield "h-unit", b
        if isinstance(b, Id1) and b.path.is_identity:
            yield "h-unit", a
        if isinstance(a, VComp) and isinstance(b, VComp):
            yield "interchange", VComp(HComp(a.first, b.first), HComp(a.second, b.second))
