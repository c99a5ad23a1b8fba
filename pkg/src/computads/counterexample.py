"""Pi_2 does not preserve the product of two Eckmann-Hilton computads.

The two-indet computads A and B both map to the subcomputad C of the terminal
2-computad generated by its indet ``c``. Their product is both the pullback
over C and the pullback over the terminal object. Applying Pi_2 reduces the
question to the square of 2-cell sets::

    (AxB)_2 --pi_A--> A_2
       |               |
      pi_B           alpha
       v               v
      B_2 ---beta---> C_2

That square is not a pullback. The cells <a1,b1>.<a2,b2> and <a1,b2>.<a2,b1>
differ but have the same image under both projections.

Every map involved preserves degree, so all checks run on cells of degree at
most ``k``. For those maps this bounded check gives the same answer as the
unbounded one.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .cells2 import EHNormalForm, enumerate_cells
from .computad import (
    TERMINAL2,
    Computad2,
    Computad2Morphism,
    TerminalMap,
    bang_map,
    cells_on_morphism_bounded,
    factor_through,
    pi2_inclusion_bounded,
    pi2_on_morphism_bounded,
    product2,
    pullback2,
    same_presentation,
    subcomputad_generated,
)
from .finset import (
    PullbackReport,
    SetSquare,
    check_pullback_square,
    comparison_map,
    is_mono,
    mono_reduction_check,
)
from .freecat import Path

DEFAULT_DEGREE = 3


class DegreeTooSmall(ValueError):
    pass


def eh_computad(vertex: str, names) -> Computad2:
    """One vertex, no 1-indets, and the given 2-indets on the identity."""
    idx = Path.identity(vertex)
    return Computad2.build([vertex], {}, {n: (idx, idx) for n in names})


@dataclass(frozen=True)
class PaperScene:
    A: Computad2
    B: Computad2
    C: Computad2
    AxB: Computad2
    pi_A: Computad2Morphism
    pi_B: Computad2Morphism
    alpha: Computad2Morphism
    beta: Computad2Morphism
    bang_A: TerminalMap
    bang_B: TerminalMap


def build_paper_objects(a_names=("a1", "a2"), b_names=("b1", "b2")) -> PaperScene:
    """Construct A, B, C, the product A x B and the maps between them.

    The indet names can be overridden to build the one-indet variants used as
    a negative control.
    """
    A = eh_computad("x", a_names)
    B = eh_computad("x", b_names)
    C = subcomputad_generated(TERMINAL2, {(0, 0)})
    AxB, pi_A, pi_B = product2(A, B)
    bang_A, bang_B = bang_map(A), bang_map(B)
    return PaperScene(
        A=A,
        B=B,
        C=C,
        AxB=AxB,
        pi_A=pi_A,
        pi_B=pi_B,
        alpha=factor_through(C, bang_A),
        beta=factor_through(C, bang_B),
        bang_A=bang_A,
        bang_B=bang_B,
    )


def cell_square(scene: PaperScene, k: int) -> SetSquare:
    """The square of 2-cell sets of degree at most ``k``."""
    return SetSquare(
        top=cells_on_morphism_bounded(scene.pi_A, k),
        left=cells_on_morphism_bounded(scene.pi_B, k),
        right=cells_on_morphism_bounded(scene.alpha, k),
        bottom=cells_on_morphism_bounded(scene.beta, k),
    )


def pi2_square(scene: PaperScene, k: int) -> SetSquare:
    """Pi_2 applied to the inner square A x B -> A, B -> C."""
    return SetSquare(
        top=pi2_on_morphism_bounded(scene.pi_A, k),
        left=pi2_on_morphism_bounded(scene.pi_B, k),
        right=pi2_on_morphism_bounded(scene.alpha, k),
        bottom=pi2_on_morphism_bounded(scene.beta, k),
    )


@dataclass(frozen=True)
class DegreeRow:
    degree: int
    product_cells: int
    pullback_elements: int
    image_size: int
    max_fiber: int

    @property
    def surjective(self) -> bool:
        return self.image_size == self.pullback_elements

    @property
    def injective(self) -> bool:
        return self.image_size == self.product_cells


def cardinality_table(square: SetSquare, k: int) -> list[DegreeRow]:
    cmp = comparison_map(square)
    fibres = Counter(cmp(p) for p in square.apex)
    rows = []
    for n in range(k + 1):
        apex_n = [p for p in square.apex if p.degree == n]
        pairs_n = [q for q in cmp.cod if q[0].degree == n]
        sizes = [fibres[q] for q in pairs_n if fibres[q]]
        rows.append(
            DegreeRow(
                degree=n,
                product_cells=len(apex_n),
                pullback_elements=len(pairs_n),
                image_size=len(sizes),
                max_fiber=max(sizes, default=0),
            )
        )
    return rows


@dataclass(frozen=True)
class CounterexampleReport:
    degree_bound: int
    star3_report: PullbackReport
    witness: Optional[tuple[EHNormalForm, EHNormalForm]]
    projections_agree: bool
    mono_check: bool
    reduction_check: bool
    inner_outer_pullbacks: bool
    cardinality_table: list[DegreeRow] = field(default_factory=list)

    @property
    def confirmed(self) -> bool:
        """True when the square fails to be a pullback for the stated reason."""
        return (
            not self.star3_report.is_pullback
            and self.witness is not None
            and self.projections_agree
            and self.mono_check
            and self.reduction_check
            and self.inner_outer_pullbacks
        )


@dataclass(frozen=True)
class ReductionReport:
    mono_check: bool
    reduction_check: bool
    inner_outer_pullbacks: bool


def verify_reductions(k: int = DEFAULT_DEGREE, scene: Optional[PaperScene] = None) -> ReductionReport:
    scene = scene or build_paper_objects()
    m = pi2_inclusion_bounded(scene.C, k)
    inner = pi2_square(scene, k)
    over_C, _, _ = pullback2(scene.alpha, scene.beta)
    over_terminal, _, _ = pullback2(scene.bang_A, scene.bang_B)
    return ReductionReport(
        mono_check=is_mono(m),
        reduction_check=mono_reduction_check(inner, m),
        inner_outer_pullbacks=same_presentation(over_C, scene.AxB)
        and same_presentation(over_terminal, scene.AxB),
    )


def verify_counterexample(
    k: int = DEFAULT_DEGREE, scene: Optional[PaperScene] = None
) -> CounterexampleReport:
    if k < 2:
        raise DegreeTooSmall("the witness cells have degree 2; use k >= 2")
    scene = scene or build_paper_objects()
    square = cell_square(scene, k)
    report = check_pullback_square(square)
    witness = report.collision
    agree = witness is not None and all(
        leg(witness[0]) == leg(witness[1]) for leg in (square.top, square.left)
    )
    red = verify_reductions(k, scene)
    return CounterexampleReport(
        degree_bound=k,
        star3_report=report,
        witness=witness,
        projections_agree=agree,
        mono_check=red.mono_check,
        reduction_check=red.reduction_check,
        inner_outer_pullbacks=red.inner_outer_pullbacks,
        cardinality_table=cardinality_table(square, k),
    )


def negative_control(k: int, a_names=("a1",), b_names=("b1",)) -> PullbackReport:
    """Pullback verdict for the cell square of a scene with fewer indets."""
    return check_pullback_square(cell_square(build_paper_objects(a_names, b_names), k))


def cell_counts(K: Computad2, k: int) -> list[int]:
    return [len(level) for level in enumerate_cells(K, k)]

