"""Seeded random generation of well-typed Eckmann-Hilton 2-cell terms."""

from __future__ import annotations

import random
from typing import Optional

from .cells2 import Cell2Term, Gen, HComp, Id1, VComp, indets_at
from .freecat import Path


def random_eh_term(
    rng: random.Random, K, max_depth: int = 6, vertex: Optional[str] = None
) -> Cell2Term:
    """A random term at one vertex of an Eckmann-Hilton computad ``K``.

    Every generator and identity at a single vertex is an endomorphism of the
    identity 1-cell, so any tree built from them with either composition is
    well typed.
    """
    if vertex is None:
        vertex = rng.choice(list(K.skeleton.vertices))
    gens = indets_at(K, vertex)

    def build(depth: int) -> Cell2Term:
        if depth == 0 or rng.random() < 0.25:
            if gens and rng.random() < 0.8:
                return Gen(rng.choice(gens))
            return Id1(Path.identity(vertex))
        ctor = VComp if rng.random() < 0.5 else HComp
        return ctor(build(depth - 1), build(depth - 1))

    return build(max_depth)


def depth(t: Cell2Term) -> int:
    if isinstance(t, VComp):
        return 1 + max(depth(t.first), depth(t.second))
    if isinstance(t, HComp):
        return 1 + max(depth(t.left), depth(t.right))
    return 0
