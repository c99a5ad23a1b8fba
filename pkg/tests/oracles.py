"""Brute-force oracles, independent of the library.

Multisets are obtained by enumerating every word and sorting it; nothing here
uses combinations_with_replacement or the library's normal forms.
"""

from collections import Counter
from itertools import product
from math import comb


def multisets_by_words(gens, n):
    """All size-n multisets over ``gens`` as sorted tuples, via all n-letter words."""
    return {tuple(sorted(w)) for w in product(gens, repeat=n)}


def closed_form_count(g, n):
    return comb(n + g - 1, g - 1) if g else int(n == 0)


def product_square_oracle(a_gens, b_gens, n):
    """Degree-n data for the square (AxB)_2 -> A_2 x_{C_2} B_2.

    Every indet of A and of B maps to the single indet of C, so a pair of cells
    is compatible exactly when the degrees agree.
    """
    pairs = [(a, b) for a in a_gens for b in b_gens]
    apex = multisets_by_words(pairs, n)
    left = multisets_by_words(a_gens, n)
    right = multisets_by_words(b_gens, n)
    compatible = {(u, v) for u in left for v in right}
    image = Counter(
        (tuple(sorted(a for a, _ in cell)), tuple(sorted(b for _, b in cell))) for cell in apex
    )
    return {
        "apex": len(apex),
        "pullback": len(compatible),
        "surjective": set(image) == compatible,
        "injective": all(m == 1 for m in image.values()),
        "fibres": image,
    }


def all_maps(dom, cod):
    dom, cod = list(dom), list(cod)
    for images in product(cod, repeat=len(dom)):
        yield dict(zip(dom, images))


def graph_morphisms(G, H):
    """Brute force: every vertex map and edge map, filtered by the square condition."""
    out = []
    for vmap in all_maps(G["vertices"], H["vertices"]):
        for emap in all_maps(G["edges"], H["edges"]):
            if all(
                H["edges"][emap[e]] == (vmap[s], vmap[t]) for e, (s, t) in G["edges"].items()
            ):
                out.append((vmap, emap))
    return out


def _image_path(path, vmap, emap):
    """(start, edges, end) of a path under raw vertex and edge maps."""
    return (vmap[path.start], tuple(emap[e] for e in path.edges), vmap[path.end])


def _as_triple(path):
    return (path.start, tuple(path.edges), path.end)


def computad_morphisms(T, A):
    """Every (vmap, emap, gmap) from T to A that respects sources, targets and 2-boundaries."""
    TG = {
        "vertices": list(T.skeleton.vertices),
        "edges": {e: (T.skeleton.src(e), T.skeleton.tgt(e)) for e in T.skeleton.edges},
    }
    AG = {
        "vertices": list(A.skeleton.vertices),
        "edges": {e: (A.skeleton.src(e), A.skeleton.tgt(e)) for e in A.skeleton.edges},
    }
    out = []
    for vmap, emap in graph_morphisms(TG, AG):
        for gmap in all_maps(T.indets2, A.indets2):
            ok = True
            for a, b in gmap.items():
                bt, ba = T.boundary2[a], A.boundary2[b]
                if _image_path(bt.src1, vmap, emap) != _as_triple(ba.src1) or _image_path(
                    bt.tgt1, vmap, emap
                ) != _as_triple(ba.tgt1):
                    ok = False
                    break
            if ok:
                out.append((vmap, emap, gmap))
    return out


def leaf_counts(t):
    """Generator occurrences of a term, by walking its dataclass fields."""
    counts = Counter()
    stack = [t]
    while stack:
        node = stack.pop()
        name = type(node).__name__
        if name == "Gen":
            counts[node.name] += 1
        elif name == "VComp":
            stack += [node.first, node.second]
        elif name == "HComp":
            stack += [node.left, node.right]
    return counts
