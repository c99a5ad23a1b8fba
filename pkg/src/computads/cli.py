"""Command-line interface.

Exit codes: 0 success (and the checked property holds), 1 the checked property
is false, 2 bad input, 3 the computad is outside the Eckmann-Hilton fragment.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path as FilePath
from typing import Optional, Sequence

from . import cells2
from .cells2 import NotEHClass, enumerate_cells, normalize
from .computad import (
    Computad2,
    Computad2Morphism,
    cells_on_morphism_bounded,
    pi2_bounded,
    product2,
    pullback2,
)
from .counterexample import (
    DEFAULT_DEGREE,
    CounterexampleReport,
    build_paper_objects,
    verify_counterexample,
)
from .dsl import DslDocument, DslError, format_computad2, parse_cell, parse_dsl
from .finset import PullbackReport, SetSquare, check_pullback_square
from .randterms import random_eh_term

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_UNSUPPORTED = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    degree_bound: int = DEFAULT_DEGREE
    output_format: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.degree_bound < 0:
            raise ValueError("degree bound must be non-negative")
        if self.output_format not in ("text", "json"):
            raise ValueError(f"unknown format {self.output_format!r}")


class InputError(Exception):
    pass


def builtin_namespace():
    scene = build_paper_objects()
    computads = {"paper_A": scene.A, "paper_B": scene.B, "paper_C": scene.C}
    morphisms = {
        "alpha": ("paper_A", "paper_C", scene.alpha),
        "beta": ("paper_B", "paper_C", scene.beta),
    }
    return computads, morphisms


class Workspace:
    """Built-in objects plus everything declared in the loaded files."""

    def __init__(self, files: Sequence[str] = ()):
        self.computads, self.morphisms = builtin_namespace()
        self.com3 = {}
        self.docs: list[tuple[str, DslDocument]] = []
        for f in files:
            try:
                text = FilePath(f).read_text()
            except OSError as exc:
                raise InputError(f"{f}: {exc.strerror}") from None
            try:
                doc = parse_dsl(text, self.computads)
            except DslError as exc:
                raise InputError(f"{f}:{exc}") from None
            self.docs.append((f, doc))
            self.add(doc)

    def add(self, doc: DslDocument) -> None:
        self.computads.update(doc.computads)
        self.com3.update(doc.com3)
        self.morphisms.update(doc.morphisms)

    def computad(self, name: str) -> Computad2:
        if name not in self.computads:
            raise InputError(f"unknown computad {name!r}")
        return self.computads[name]

    def morphism(self, name: str) -> Computad2Morphism:
        if name not in self.morphisms:
            raise InputError(f"unknown morphism {name!r}")
        return self.morphisms[name][2]


# -- report formatting -------------------------------------------------------------


def multiset(cell) -> list[str]:
    return cell.names()


def pullback_report_dict(r: PullbackReport) -> dict:
    d = {"is_pullback": r.is_pullback, "apex_size": r.apex_size, "pullback_size": r.pullback_size}
    if r.collision is not None:
        d["collision"] = [_jsonable(x) for x in r.collision]
    if r.missing is not None:
        d["missing"] = [_jsonable(x) for x in r.missing]
    return d


def _jsonable(x):
    if isinstance(x, cells2.EHNormalForm):
        return multiset(x)
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return str(x)


def counterexample_dict(r: CounterexampleReport) -> dict:
    return {
        "degree_bound": r.degree_bound,
        "is_pullback": r.star3_report.is_pullback,
        "witness": [multiset(c) for c in r.witness] if r.witness else None,
        "projections_agree": r.projections_agree,
        "mono_check": r.mono_check,
        "reduction_check": r.reduction_check,
        "inner_outer_pullbacks": r.inner_outer_pullbacks,
        "cardinality_table": [
            {
                "degree": row.degree,
                "product_cells": row.product_cells,
                "pullback_elements": row.pullback_elements,
                "image_size": row.image_size,
                "max_fiber": row.max_fiber,
                "surjective": row.surjective,
                "injective": row.injective,
            }
            for row in r.cardinality_table
        ],
        "star3_report": pullback_report_dict(r.star3_report),
    }


def _cells_text(cells) -> str:
    return "{" + ", ".join(multiset(cells)) + "}"


def format_witness(pair) -> str:
    return f"{_cells_text(pair[0])}  vs  {_cells_text(pair[1])}"


def counterexample_text(r: CounterexampleReport) -> str:
    lines = [
        "Pi_2 on the product A x B of two-indet Eckmann-Hilton computads",
        f"degree bound: {r.degree_bound}",
        f"square of 2-cells is a pullback: {str(r.star3_report.is_pullback).lower()}",
    ]
    if r.witness:
        lines.append(f"witness: {format_witness(r.witness)}")
    lines += [
        f"projections agree on witness: {str(r.projections_agree).lower()}",
        f"Pi_2(m) is mono: {str(r.mono_check).lower()}",
        f"inner and outer Pi_2 squares agree: {str(r.reduction_check).lower()}",
        f"A x B is the pullback over C and over 1_2: {str(r.inner_outer_pullbacks).lower()}",
        "",
        "degree  product_cells  pullback_elements  max_fiber  surjective  injective",
    ]
    for row in r.cardinality_table:
        lines.append(
            f"{row.degree:>6}  {row.product_cells:>13}  {row.pullback_elements:>17}"
            f"  {row.max_fiber:>9}  {str(row.surjective).lower():>10}  {str(row.injective).lower():>9}"
        )
    lines.append("")
    lines.append("verdict: Pi_2 does not preserve this product" if r.confirmed else "verdict: not confirmed")
    return "\n".join(lines)


def pullback_text(r: PullbackReport) -> str:
    lines = [
        f"is_pullback: {str(r.is_pullback).lower()}",
        f"apex: {r.apex_size} elements, canonical pullback: {r.pullback_size} elements",
    ]
    if r.collision is not None:
        lines.append(f"collision: {format_witness(r.collision)}")
    if r.missing is not None:
        lines.append(f"missing: ({_cells_text(r.missing[0])}, {_cells_text(r.missing[1])})")
    return "\n".join(lines)


def emit_report(report, fmt: str = "text") -> str:
    if isinstance(report, CounterexampleReport):
        data, text = counterexample_dict, counterexample_text
    elif isinstance(report, PullbackReport):
        data, text = pullback_report_dict, pullback_text
    else:
        raise TypeError(f"cannot format {type(report).__name__}")
    if fmt == "json":
        return json.dumps(data(report), indent=2, sort_keys=True)
    return text(report)


def _emit(payload: dict, text: str, cfg: RunConfig) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) if cfg.output_format == "json" else text


# -- commands ----------------------------------------------------------------------


def cmd_validate(args, ws: Workspace, cfg: RunConfig):
    lines, payload = [], {}
    for f, doc in ws.docs:
        lines.append(f"ok: {f}")
        lines += [
            f"  computad2 {n}: {len(K.vertices)} vertices, {len(K.edges)} edges, "
            f"{len(K.indets2)} 2-indets"
            for n, K in doc.computads.items()
        ]
        lines += [f"  com3 {n} over {b}: {len(M.indets3)} 3-indets" for n, (b, M) in doc.com3.items()]
        lines += [f"  morphism {n}: {s} -> {t}" for n, (s, t, _) in doc.morphisms.items()]
        payload[f] = {
            "computads": {n: len(K.indets2) for n, K in doc.computads.items()},
            "com3": {n: len(M.indets3) for n, (_, M) in doc.com3.items()},
            "morphisms": list(doc.morphisms),
        }
    return EXIT_OK, _emit(payload, "\n".join(lines), cfg)


def cmd_product(args, ws: Workspace, cfg: RunConfig):
    A, B = ws.computad(args.left), ws.computad(args.right)
    P, _, _ = product2(A, B)
    name = f"{args.left}_x_{args.right}"
    payload = {
        "name": name,
        "vertices": list(P.vertices),
        "edges": {e: [P.skeleton.src(e), P.skeleton.tgt(e)] for e in P.edges},
        "gens2": {
            a: [str(P.boundary2[a].src1), str(P.boundary2[a].tgt1)] for a in P.indets2
        },
    }
    return EXIT_OK, _emit(payload, format_computad2(name, P), cfg)


def cmd_cells(args, ws: Workspace, cfg: RunConfig):
    K = ws.computad(args.name)
    graded = enumerate_cells(K, cfg.degree_bound)
    lines = []
    for n, level in enumerate(graded):
        lines.append(f"degree {n}: {len(level)}")
        lines += [f"  {c.at_vertex}: {c}" for c in level]
    lines.append(f"total: {sum(map(len, graded))}")
    payload = {
        "degree_bound": cfg.degree_bound,
        "counts": [len(level) for level in graded],
        "cells": [[{"vertex": c.at_vertex, "multiset": multiset(c)} for c in level] for level in graded],
    }
    return EXIT_OK, _emit(payload, "\n".join(lines), cfg)


def cmd_pi2(args, ws: Workspace, cfg: RunConfig):
    K = ws.computad(args.name)
    pairs = pi2_bounded(K, cfg.degree_bound)
    lines = [f"{len(pairs)} parallel pairs of degree <= {cfg.degree_bound}"]
    lines += [f"  {p}" for p in pairs]
    payload = {
        "degree_bound": cfg.degree_bound,
        "count": len(pairs),
        "pairs": [[multiset(p.first), multiset(p.second)] for p in pairs],
    }
    return EXIT_OK, _emit(payload, "\n".join(lines), cfg)


def cmd_check_pullback(args, ws: Workspace, cfg: RunConfig):
    f, g = ws.morphism(args.right), ws.morphism(args.bottom)
    P, p1, p2 = pullback2(f, g)
    k = cfg.degree_bound
    square = SetSquare(
        top=cells_on_morphism_bounded(p1, k),
        left=cells_on_morphism_bounded(p2, k),
        right=cells_on_morphism_bounded(f, k),
        bottom=cells_on_morphism_bounded(g, k),
    )
    report = check_pullback_square(square)
    return (EXIT_OK if report.is_pullback else EXIT_FALSE), emit_report(report, cfg.output_format)


def cmd_verify(args, ws: Workspace, cfg: RunConfig):
    if cfg.degree_bound < 2:
        raise InputError("verify-counterexample needs --max-degree >= 2")
    report = verify_counterexample(cfg.degree_bound)
    return (EXIT_OK if report.confirmed else EXIT_FALSE), emit_report(report, cfg.output_format)


def cmd_normalize(args, ws: Workspace, cfg: RunConfig):
    K = ws.computad(args.name)
    try:
        term = parse_cell(args.term, K)
        nf = normalize(term, K)
    except DslError as exc:
        raise InputError(str(exc)) from None
    except (cells2.IllTyped, cells2.UnknownGenerator) as exc:
        raise InputError(f"ill-typed term: {exc}") from None
    payload = {"vertex": nf.at_vertex, "multiset": multiset(nf), "degree": nf.degree}
    return EXIT_OK, _emit(payload, f"{nf.at_vertex}: {nf}  (degree {nf.degree})", cfg)


def cmd_eh_check(args, ws: Workspace, cfg: RunConfig):
    """Random terms: normal forms must survive every single rewrite step."""
    K = ws.computad(args.name)
    if not cells2.is_eh_class(K):
        raise NotEHClass(f"{args.name} is not in the Eckmann-Hilton fragment")
    rng = random.Random(cfg.seed)
    failures = []
    steps = 0
    for i in range(args.trials):
        t = random_eh_term(rng, K, max_depth=args.depth)
        nf = normalize(t, K)
        for rule, s in cells2.interchange_rewrites(t):
            steps += 1
            if normalize(s, K) != nf:
                failures.append((i, rule, str(t)))
    text = f"{args.trials} terms, {steps} rewrites, {len(failures)} failures"
    text += "".join(f"\n  term {i}: {rule} changed the normal form of {t}" for i, rule, t in failures)
    payload = {"trials": args.trials, "rewrites": steps, "failures": len(failures), "seed": cfg.seed}
    return (EXIT_FALSE if failures else EXIT_OK), _emit(payload, text, cfg)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-f", "--file", action="append", default=[], help=".cpd file to load")
    common.add_argument("--max-degree", type=int, default=DEFAULT_DEGREE)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="computads", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="parse and validate .cpd files")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("product", parents=[common], help="product of two 2-computads")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("cells", parents=[common], help="enumerate 2-cells by degree")
    p.add_argument("name")
    p.set_defaults(func=cmd_cells)

    p = sub.add_parser("pi2", parents=[common], help="parallel pairs of 2-cells")
    p.add_argument("name")
    p.set_defaults(func=cmd_pi2)

    p = sub.add_parser(
        "check-pullback",
        parents=[common],
        help="is the 2-cell square of the pullback of a cospan a pullback of cell sets?",
    )
    p.add_argument("right", help="morphism A -> C")
    p.add_argument("bottom", help="morphism B -> C")
    p.set_defaults(func=cmd_check_pullback)

    p = sub.add_parser("verify-counterexample", parents=[common])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("normalize", parents=[common], help="normal form of a 2-cell term")
    p.add_argument("name")
    p.add_argument("term")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("eh-check", parents=[common], help="randomized rewrite-invariance check")
    p.add_argument("name")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--depth", type=int, default=6)
    p.set_defaults(func=cmd_eh_check)
    return parser


def run_command(argv: Optional[Sequence[str]] = None) -> tuple[int, str]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_INPUT), ""
    try:
        cfg = RunConfig(args.max_degree, args.format, args.seed)
        files = list(args.file) + list(getattr(args, "files", []))
        ws = Workspace(files)
        return args.func(args, ws, cfg)
    except NotEHClass as exc:
        return EXIT_UNSUPPORTED, f"error: unsupported fragment: {exc}"
    except (InputError, ValueError) as exc:
        return EXIT_INPUT, f"error: {exc}"


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, out = run_command(argv)
    if out:
        stream = sys.stdout if code in (EXIT_OK, EXIT_FALSE) else sys.stderr
        print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
