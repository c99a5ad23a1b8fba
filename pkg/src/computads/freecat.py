"""Graphs, free-category paths, product graphs and graph morphisms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .finset import FinSet, SetFun


class NotComposable(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


def pair_label(a: str, b: str) -> str:
    """Label of the pair ``(a, b)`` in a product; nests for iterated products."""
    return f"<{a},{b}>"


@dataclass(frozen=True)
class Graph:
    vertices: FinSet
    edges: FinSet
    src: SetFun
    tgt: SetFun

    @classmethod
    def build(cls, vertices, edges: Mapping[str, tuple[str, str]] | None = None) -> "Graph":
        """Build from a vertex list and ``{edge: (source, target)}``."""
        edges = dict(edges or {})
        V = FinSet(vertices)
        E = FinSet(edges)
        return cls(
            V,
            E,
            SetFun(E, V, {e: s for e, (s, _) in edges.items()}),
            SetFun(E, V, {e: t for e, (_, t) in edges.items()}),
        )

    def path(self, start: str, *edges: str) -> "Path":
        """The path starting at ``start`` following ``edges``; checks composability."""
        if start not in self.vertices:
            raise KeyError(f"unknown vertex {start!r}")
        here = start
        for e in edges:
            if e not in self.edges:
                raise KeyError(f"unknown edge {e!r}")
            if self.src(e) != here:
                raise NotComposable(f"edge {e!r} does not start at {here!r}")
            here = self.tgt(e)
        return Path(start, tuple(edges), here)

    def contains_path(self, p: "Path") -> bool:
        try:
            return self.path(p.start, *p.edges) == p
        except (KeyError, NotComposable):
            return False


@dataclass(frozen=True)
class Path:
    """A 1-cell of the free category: a start vertex and a string of edges.

    ``end`` is stored so that paths can be composed without the graph.
    """

    start: str
    edges: tuple = ()
    end: str = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.end is None:
            if self.edges:
                raise ValueError("non-empty path needs an explicit end vertex")
            object.__setattr__(self, "end", self.start)

    @classmethod
    def identity(cls, v: str) -> "Path":
        return cls(v, (), v)

    def __len__(self):
        return len(self.edges)

    @property
    def is_identity(self) -> bool:
        return not self.edges

    def __str__(self):
        if not self.edges:
            return f"id({self.start})"
        return " ".join(self.edges)


def path_compose(p: Path, q: Path) -> Path:
    """``p`` followed by ``q``."""
    if p.end != q.start:
        raise NotComposable(f"path ends at {p.end!r} but next starts at {q.start!r}")
    return Path(p.start, p.edges + q.edges, q.end)


@dataclass(frozen=True)
class GraphMorphism:
    source: Graph
    target: Graph
    on_vertices: SetFun
    on_edges: SetFun

    def __post_init__(self):
        if not is_graph_morphism(
            dict(self.on_vertices.items()), dict(self.on_edges.items()), self.source, self.target
        ):
            raise ValueError("maps do not commute with source and target")

    @classmethod
    def from_maps(cls, G: Graph, H: Graph, vmap: Mapping, emap: Mapping) -> "GraphMorphism":
        return cls(G, H, SetFun(G.vertices, H.vertices, vmap), SetFun(G.edges, H.edges, emap))

    def map_path(self, p: Path) -> Path:
        return Path(
            self.on_vertices(p.start),
            tuple(self.on_edges(e) for e in p.edges),
            self.on_vertices(p.end),
        )

    def then(self, other: "GraphMorphism") -> "GraphMorphism":
        return GraphMorphism(
            self.source,
            other.target,
            self.on_vertices.then(other.on_vertices),
            self.on_edges.then(other.on_edges),
        )


def is_graph_morphism(vmap: Mapping, emap: Mapping, G: Graph, H: Graph) -> bool:
    if any(v not in vmap or vmap[v] not in H.vertices for v in G.vertices):
        return False
    if any(e not in emap or emap[e] not in H.edges for e in G.edges):
        return False
    return all(
        H.src(emap[e]) == vmap[G.src(e)] and H.tgt(emap[e]) == vmap[G.tgt(e)] for e in G.edges
    )


def graph_product(G: Graph, H: Graph) -> tuple[Graph, GraphMorphism, GraphMorphism]:
    verts = {pair_label(v, w): (v, w) for v in G.vertices for w in H.vertices}
    edges = {}
    for e in G.edges:
        for f in H.edges:
            edges[pair_label(e, f)] = (e, f)
    P = Graph.build(
        verts,
        {
            lbl: (pair_label(G.src(e), H.src(f)), pair_label(G.tgt(e), H.tgt(f)))
            for lbl, (e, f) in edges.items()
        },
    )
    proj_G = GraphMorphism.from_maps(
        P, G, {k: v for k, (v, _) in verts.items()}, {k: e for k, (e, _) in edges.items()}
    )
    proj_H = GraphMorphism.from_maps(
        P, H, {k: w for k, (_, w) in verts.items()}, {k: f for k, (_, f) in edges.items()}
    )
    return P, proj_G, proj_H


def pair_paths(p: Path, q: Path) -> Path:
    """Synchronous pairing of two paths of equal length, as a path in the product."""
    if len(p) != len(q):
        raise LengthMismatch(f"paths of lengths {len(p)} and {len(q)} cannot be paired")
    return Path(
        pair_label(p.start, q.start),
        tuple(pair_label(e, f) for e, f in zip(p.edges, q.edges)),
        pair_label(p.end, q.end),
    )
