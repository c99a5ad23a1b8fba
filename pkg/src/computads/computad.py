"""2-computad and 3-computad presentations, their limits, and the functor Pi_2.

A 2-computad is presented by its skeleton graph (0- and 1-indets) and a set of
2-indets, each with a pair of parallel paths as boundary. A 3-computad is a
2-computad together with 3-indets whose boundaries are parallel pairs of
2-cells.

The terminal 2-computad has infinitely many 2-indets, one for every pair of
natural numbers, so it is only exposed through ``TERMINAL2``. Its finite
subcomputads can be materialized with ``subcomputad_generated``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Callable, Iterable, Mapping, Optional

from .cells2 import (
    Boundary2,
    EHNormalForm,
    NotEHClass,
    cells_up_to,
    is_eh_class,
)
from .finset import CodomainMismatch, FinSet, SetFun
from .freecat import (
    Graph,
    GraphMorphism,
    LengthMismatch,
    Path,
    graph_product,
    is_graph_morphism,
    pair_label,
    pair_paths,
)


class ValidationError(ValueError):
    pass


class NotInImage(ValueError):
    pass


@dataclass(frozen=True)
class Computad2:
    skeleton: Graph
    indets2: FinSet
    boundary2: Mapping[str, Boundary2] = field(hash=False)

    @classmethod
    def build(
        cls,
        vertices: Iterable[str],
        edges: Mapping[str, tuple[str, str]] | None = None,
        gens2: Mapping[str, tuple[Path, Path]] | None = None,
    ) -> "Computad2":
        """Build from plain data; ``gens2`` maps names to ``(source path, target path)``."""
        gens2 = dict(gens2 or {})
        return cls(
            Graph.build(vertices, edges),
            FinSet(gens2),
            {a: Boundary2(s, t) for a, (s, t) in gens2.items()},
        )

    @property
    def vertices(self) -> FinSet:
        return self.skeleton.vertices

    @property
    def edges(self) -> FinSet:
        return self.skeleton.edges


def computad2_errors(K: Computad2) -> list[str]:
    errors = []
    if set(K.boundary2) != set(K.indets2):
        errors.append("indets and boundary declarations differ")
    for a in K.indets2:
        b = K.boundary2.get(a)
        if b is None:
            continue
        for p in (b.src1, b.tgt1):
            if not K.skeleton.contains_path(p):
                errors.append(f"{a}: {p} is not a path of the skeleton")
                break
        else:
            if not b.is_parallel:
                errors.append(f"{a}: boundary {b.src1} => {b.tgt1} is not parallel")
    return errors


def validate_computad2(K: Computad2) -> bool:
    return not computad2_errors(K)


def check_computad2(K: Computad2) -> Computad2:
    errors = computad2_errors(K)
    if errors:
        raise ValidationError(errors[0])
    return K


@dataclass(frozen=True)
class Computad2Morphism:
    source: Computad2
    target: Computad2
    on_graph: GraphMorphism
    on_indets2: SetFun

    def __post_init__(self):
        for a in self.source.indets2:
            b = self.source.boundary2[a]
            image = self.target.boundary2[self.on_indets2(a)]
            if (self.on_graph.map_path(b.src1), self.on_graph.map_path(b.tgt1)) != (
                image.src1,
                image.tgt1,
            ):
                raise ValidationError(f"{a} -> {self.on_indets2(a)} does not preserve boundaries")

    @classmethod
    def from_maps(
        cls, A: Computad2, B: Computad2, vmap: Mapping, emap: Mapping, gmap: Mapping
    ) -> "Computad2Morphism":
        return cls(
            A,
            B,
            GraphMorphism.from_maps(A.skeleton, B.skeleton, vmap, emap),
            SetFun(A.indets2, B.indets2, gmap),
        )

    @classmethod
    def identity(cls, A: Computad2) -> "Computad2Morphism":
        return cls.from_maps(
            A, A, {v: v for v in A.vertices}, {e: e for e in A.edges}, {a: a for a in A.indets2}
        )

    def vertex_image(self, v):
        return self.on_graph.on_vertices(v)

    def edge_image(self, e):
        return self.on_graph.on_edges(e)

    def indet_image(self, a):
        return self.on_indets2(a)

    def map_path(self, p: Path) -> Path:
        return self.on_graph.map_path(p)

    def map_cell(self, nf: EHNormalForm) -> EHNormalForm:
        """Image of a cell; indets go to indets, so degree is preserved."""
        return EHNormalForm.of(self.vertex_image(nf.at_vertex), map(self.on_indets2, nf.names()))

    def then(self, other: "Computad2Morphism") -> "Computad2Morphism":
        return Computad2Morphism(
            self.source,
            other.target,
            self.on_graph.then(other.on_graph),
            self.on_indets2.then(other.on_indets2),
        )

    def same_maps(self, other: "Computad2Morphism") -> bool:
        return (
            self.on_graph.on_vertices == other.on_graph.on_vertices
            and self.on_graph.on_edges == other.on_graph.on_edges
            and self.on_indets2 == other.on_indets2
        )


def is_computad2_morphism(
    vmap: Mapping, emap: Mapping, gmap: Mapping, A: Computad2, B: Computad2
) -> bool:
    if not is_graph_morphism(vmap, emap, A.skeleton, B.skeleton):
        return False
    for a in A.indets2:
        if a not in gmap or gmap[a] not in B.indets2:
            return False
        b, image = A.boundary2[a], B.boundary2[gmap[a]]
        for p, q in ((b.src1, image.src1), (b.tgt1, image.tgt1)):
            mapped = Path(vmap[p.start], tuple(emap[e] for e in p.edges), vmap[p.end])
            if mapped != q:
                return False
    return True


@dataclass(frozen=True)
class ParallelPair2:
    first: EHNormalForm
    second: EHNormalForm

    def __post_init__(self):
        if self.first.at_vertex != self.second.at_vertex:
            raise ValueError("cells of a parallel pair must share their boundary")

    def __str__(self):
        return f"<{self.first}, {self.second}>"


@dataclass(frozen=True)
class Com3Object:
    base: Computad2
    indets3: FinSet
    boundary3: Mapping[str, ParallelPair2] = field(hash=False)


def com3_errors(M: Com3Object) -> list[str]:
    errors = computad2_errors(M.base)
    if set(M.boundary3) != set(M.indets3):
        errors.append("3-indets and boundary declarations differ")
    if not is_eh_class(M.base):
        errors.append("3-indet boundaries are only checked over Eckmann-Hilton bases")
        return errors
    for u in M.indets3:
        pair = M.boundary3.get(u)
        if pair is None:
            continue
        for cell in (pair.first, pair.second):
            if cell.at_vertex not in M.base.vertices:
                errors.append(f"{u}: unknown vertex {cell.at_vertex}")
            for g in cell.names():
                if g not in M.base.indets2:
                    errors.append(f"{u}: unknown 2-indet {g}")
                elif M.base.boundary2[g].src1.start != cell.at_vertex:
                    errors.append(f"{u}: {g} does not live at {cell.at_vertex}")
    return errors


def validate_com3(M: Com3Object) -> bool:
    return not com3_errors(M)


def tr2(M: Com3Object) -> Computad2:
    return M.base


def i2(A: Computad2) -> Com3Object:
    return Com3Object(A, FinSet(), {})


# -- the terminal 2-computad -------------------------------------------------


class Terminal2Handle:
    """The terminal 2-computad, without materializing it.

    One vertex ``x`` and one loop ``xi``; the 1-cells are the powers of
    ``xi`` (identified with their lengths), and there is exactly one 2-indet
    for every pair of lengths. The indet for ``(0, 0)`` is called ``c``.
    """

    vertex = "x"
    edge = "xi"

    def one_cell(self, n: int) -> Path:
        return Path(self.vertex, (self.edge,) * n, self.vertex)

    def indet_name(self, coords: tuple[int, int]) -> str:
        i, j = coords
        return "c" if (i, j) == (0, 0) else f"c_{i}_{j}"

    def indet_coords(self, name: str) -> tuple[int, int]:
        if name == "c":
            return (0, 0)
        head, i, j = name.split("_")
        if head != "c":
            raise ValueError(name)
        return (int(i), int(j))

    def indet_boundary(self, coords: tuple[int, int]) -> Boundary2:
        return Boundary2(self.one_cell(coords[0]), self.one_cell(coords[1]))

    def __repr__(self):
        return "TERMINAL2"


TERMINAL2 = Terminal2Handle()


@dataclass(frozen=True)
class TerminalMap:
    """The unique map from ``source`` to the terminal 2-computad."""

    source: Computad2
    target: Terminal2Handle = TERMINAL2

    def vertex_image(self, v):
        return self.target.vertex

    def edge_image(self, e):
        return self.target.edge

    def path_image(self, p: Path) -> int:
        return len(p)

    def indet_coords(self, a) -> tuple[int, int]:
        b = self.source.boundary2[a]
        return (len(b.src1), len(b.tgt1))

    def indet_image(self, a) -> str:
        return self.target.indet_name(self.indet_coords(a))

    def image_gens(self) -> set[tuple[int, int]]:
        return {self.indet_coords(a) for a in self.source.indets2}


def bang_map(A: Computad2) -> TerminalMap:
    return TerminalMap(A)


def subcomputad_generated(handle: Terminal2Handle, gens: Iterable[tuple[int, int]]) -> Computad2:
    gens = sorted(set(gens))
    edges = {handle.edge: (handle.vertex, handle.vertex)} if any(i or j for i, j in gens) else {}
    return Computad2.build(
        [handle.vertex],
        edges,
        {handle.indet_name(g): (handle.one_cell(g[0]), handle.one_cell(g[1])) for g in gens},
    )


def factor_through(C: Computad2, f: TerminalMap) -> Computad2Morphism:
    """Factor a map into the terminal 2-computad through its subcomputad ``C``."""
    A = f.source
    handle = f.target
    for name in C.indets2:
        if C.boundary2[name] != handle.indet_boundary(handle.indet_coords(name)):
            raise ValueError(f"{name} is not an indet of the terminal 2-computad")
    gmap = {}
    for a in A.indets2:
        image = f.indet_image(a)
        if image not in C.indets2:
            raise NotInImage(f"{a} maps to {image}, which is not in the subcomputad")
        gmap[a] = image
    if len(A.edges) and handle.edge not in C.edges:
        raise NotInImage("edges map to xi, which is not in the subcomputad")
    return Computad2Morphism.from_maps(
        A,
        C,
        {v: handle.vertex for v in A.vertices},
        {e: handle.edge for e in A.edges},
        gmap,
    )


# -- limits ------------------------------------------------------------------


def _product_part(
    A: Computad2,
    B: Computad2,
    keep_vertex: Callable = lambda v, w: True,
    keep_edge: Callable = lambda e, f: True,
    keep_indet: Callable = lambda a, b: True,
) -> tuple[Computad2, Computad2Morphism, Computad2Morphism]:
    """Sub-presentation of the product on the pairs accepted by the filters.

    A pair of 2-indets is kept only if its source paths and its target paths
    pair synchronously, i.e. the boundary tuple is a 1-cell of the product.
    """
    verts = {pair_label(v, w): (v, w) for v in A.vertices for w in B.vertices if keep_vertex(v, w)}
    edges = {}
    for e in A.edges:
        for f in B.edges:
            if keep_edge(e, f):
                edges[pair_label(e, f)] = (e, f)
    skeleton = Graph.build(
        verts,
        {
            k: (
                pair_label(A.skeleton.src(e), B.skeleton.src(f)),
                pair_label(A.skeleton.tgt(e), B.skeleton.tgt(f)),
            )
            for k, (e, f) in edges.items()
        },
    )
    indets = {}
    bounds = {}
    for a in A.indets2:
        for b in B.indets2:
            if not keep_indet(a, b):
                continue
            ba, bb = A.boundary2[a], B.boundary2[b]
            try:
                bnd = Boundary2(pair_paths(ba.src1, bb.src1), pair_paths(ba.tgt1, bb.tgt1))
            except LengthMismatch:
                continue
            key = pair_label(a, b)
            indets[key] = (a, b)
            bounds[key] = bnd
    P = Computad2(skeleton, FinSet(indets), bounds)
    pi_A = Computad2Morphism.from_maps(
        P,
        A,
        {k: v for k, (v, _) in verts.items()},
        {k: e for k, (e, _) in edges.items()},
        {k: a for k, (a, _) in indets.items()},
    )
    pi_B = Computad2Morphism.from_maps(
        P,
        B,
        {k: w for k, (_, w) in verts.items()},
        {k: f for k, (_, f) in edges.items()},
        {k: b for k, (_, b) in indets.items()},
    )
    return P, pi_A, pi_B


def product2(A: Computad2, B: Computad2) -> tuple[Computad2, Computad2Morphism, Computad2Morphism]:
    P, pi_A, pi_B = _product_part(A, B)
    # the skeleton is the product graph; reuse it as a cross-check
    G, _, _ = graph_product(A.skeleton, B.skeleton)
    assert G == P.skeleton
    return P, pi_A, pi_B


def pullback2(alpha, beta) -> tuple[Computad2, Computad2Morphism, Computad2Morphism]:
    """Pullback of a cospan of computad maps.

    Either leg may be a ``Computad2Morphism`` or a ``TerminalMap``; both
    legs must have the same target.
    """
    if alpha.target != beta.target:
        raise CodomainMismatch("the two maps have different codomains")
    return _product_part(
        alpha.source,
        beta.source,
        lambda v, w: alpha.vertex_image(v) == beta.vertex_image(w),
        lambda e, f: alpha.edge_image(e) == beta.edge_image(f),
        lambda a, b: alpha.indet_image(a) == beta.indet_image(b),
    )


def same_presentation(K: Computad2, L: Computad2) -> bool:
    """Equality with identical labels (vertex, edge and indet order ignored)."""
    return (
        K.vertices.same_as(L.vertices)
        and K.edges.same_as(L.edges)
        and all(K.skeleton.src(e) == L.skeleton.src(e) for e in K.edges)
        and all(K.skeleton.tgt(e) == L.skeleton.tgt(e) for e in K.edges)
        and dict(K.boundary2) == dict(L.boundary2)
    )


# -- the parallel-pair functor, degree-bounded ---------------------------------


def pi2_bounded(A: Computad2, k: int) -> FinSet:
    """Parallel pairs of 2-cells of ``A``, both of degree at most ``k``."""
    if not is_eh_class(A):
        raise NotEHClass("Pi_2 is only enumerated in the Eckmann-Hilton fragment")
    by_vertex: dict[str, list[EHNormalForm]] = {}
    for cell in cells_up_to(A, k):
        by_vertex.setdefault(cell.at_vertex, []).append(cell)
    return FinSet(
        ParallelPair2(s, t) for cells in by_vertex.values() for s, t in cartesian(cells, cells)
    )


def pi2_on_morphism_bounded(f: Computad2Morphism, k: int) -> SetFun:
    dom = pi2_bounded(f.source, k)
    cod = pi2_bounded(f.target, k)
    return SetFun.from_callable(
        dom, cod, lambda p: ParallelPair2(f.map_cell(p.first), f.map_cell(p.second))
    )


def cells_on_morphism_bounded(f: Computad2Morphism, k: int) -> SetFun:
    """The map on 2-cells of degree at most ``k``."""
    dom = FinSet(cells_up_to(f.source, k))
    cod = FinSet(cells_up_to(f.target, k))
    return SetFun.from_callable(dom, cod, f.map_cell)


def pi2_inclusion_bounded(C: Computad2, k: int, handle: Terminal2Handle = TERMINAL2) -> SetFun:
    """Pi_2 of the inclusion of a subcomputad of the terminal 2-computad.

    The codomain is the set of parallel pairs of terminal 2-cells reached from
    ``C``; those cells are labeled by the terminal's own indet names.
    """
    dom = pi2_bounded(C, k)

    def include(cell: EHNormalForm) -> EHNormalForm:
        coords = [handle.indet_coords(g) for g in cell.names()]
        return EHNormalForm.of(handle.vertex, [handle.indet_name(c) for c in coords])

    image = {p: ParallelPair2(include(p.first), include(p.second)) for p in dom}
    return SetFun(dom, FinSet(dict.fromkeys(image.values())), image)


# -- 3-computads ---------------------------------------------------------------


def realize_pair(s: EHNormalForm, t: EHNormalForm) -> Optional[EHNormalForm]:
    """A product cell projecting onto ``s`` and ``t``, or None if there is none.

    In the Eckmann-Hilton fragment such a cell exists exactly when the degrees
    agree; the one returned pairs the sorted occurrences positionally.
    """
    if s.degree != t.degree:
        return None
    return EHNormalForm.of(
        pair_label(s.at_vertex, t.at_vertex),
        [pair_label(a, b) for a, b in zip(s.names(), t.names())],
    )


def product3(M: Com3Object, N: Com3Object) -> Com3Object:
    if not (is_eh_class(M.base) and is_eh_class(N.base)):
        raise NotEHClass("3-indet boundaries are only compared in the Eckmann-Hilton fragment")
    base, _, _ = product2(M.base, N.base)
    bounds = {}
    for u in M.indets3:
        for v in N.indets3:
            bu, bv = M.boundary3[u], N.boundary3[v]
            src = realize_pair(bu.first, bv.first)
            tgt = realize_pair(bu.second, bv.second)
            if src is not None and tgt is not None:
                bounds[pair_label(u, v)] = ParallelPair2(src, tgt)
    return Com3Object(base, FinSet(bounds), bounds)
