"""Computads up to dimension 3, Eckmann-Hilton normal forms, and the Pi_2 product check."""

from .cells2 import (
    Boundary2,
    EHNormalForm,
    Gen,
    HComp,
    Id1,
    VComp,
    boundary,
    enumerate_cells,
    eq_cells,
    is_eh_class,
    normalize,
)
from .computad import (
    TERMINAL2,
    Com3Object,
    Computad2,
    Computad2Morphism,
    ParallelPair2,
    bang_map,
    factor_through,
    i2,
    pi2_bounded,
    pi2_on_morphism_bounded,
    product2,
    product3,
    pullback2,
    subcomputad_generated,
    tr2,
    validate_computad2,
)
from .counterexample import build_paper_objects, verify_counterexample, verify_reductions
from .finset import FinSet, SetFun, SetSquare, check_pullback_square, is_mono, pullback
from .freecat import Graph, Path, graph_product, pair_paths, path_compose
