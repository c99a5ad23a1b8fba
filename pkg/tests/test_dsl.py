from pathlib import Path as FsPath

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from computads.cells2 import Gen, HComp, VComp, normalize
from computads.computad import Computad2, product2
from computads.counterexample import build_paper_objects
from computads.dsl import (
    DslError,
    DslSyntaxError,
    DslValidationError,
    UnknownReference,
    format_computad2,
    parse_cell,
    parse_dsl,
    print_dsl,
)
from computads.freecat import Path

DATA = FsPath(__file__).resolve().parent.parent / "data"
SCENE = build_paper_objects()
ENV = {"paper_C": SCENE.C}


def test_shipped_file_parses():
    doc = parse_dsl((DATA / "paper_A.cpd").read_text())
    assert list(doc.computads) == ["paper_A"]
    assert len(doc.computads["paper_A"].indets2) == 2


def test_all_shipped_files_parse():
    for f in sorted(DATA.glob("*.cpd")):
        assert len(parse_dsl(f.read_text(), ENV)) > 0


def test_scene_file():
    doc = parse_dsl((DATA / "scene.cpd").read_text())
    assert set(doc.computads) == {"A", "B", "C"}
    assert doc.morphisms["alpha_A"][2].indet_image("a1") == "c"
    base, M = doc.com3["M"]
    assert base == "A" and list(M.indets3) == ["u"]
    assert M.boundary3["u"].second.names() == ["a1", "a2"]


def test_edges_and_paths():
    doc = parse_dsl(
        """
        computad2 K {
          objects: u, v;
          edges: e: u -> v, f: v -> v;
          gens2: s: e => e f, t: v => f f;
        }
        """
    )
    K = doc.computads["K"]
    assert K.boundary2["s"].tgt1 == Path("u", ("e", "f"), "v")
    assert K.boundary2["t"].src1 == Path.identity("v")


def test_unknown_edge_position():
    src = "computad2 K {\n  objects: x;\n  gens2: s: g => id(x);\n}\n"
    with pytest.raises(DslError) as info:
        parse_dsl(src)
    assert info.value.line == 3


def test_syntax_error_position():
    with pytest.raises(DslSyntaxError) as info:
        parse_dsl("computad2 K {\n  objects x;\n}")
    assert (info.value.line, info.value.col) == (2, 11)


def test_unknown_computad_reference():
    with pytest.raises(UnknownReference):
        parse_dsl("morphism f: A -> B { }")


def test_nonparallel_boundary_is_rejected():
    with pytest.raises(DslValidationError):
        parse_dsl("computad2 K { objects: u, v; edges: e: u -> v; gens2: s: id(u) => e; }")


def test_bad_morphism_is_rejected():
    src = """
    computad2 A { objects: x; gens2: a: id(x) => id(x); }
    computad2 K { objects: y; edges: l: y -> y; gens2: s: l => l; }
    morphism f: A -> K { vertices: x -> y; gens2: a -> s; }
    """
    with pytest.raises(DslValidationError):
        parse_dsl(src)


def test_duplicate_declaration():
    with pytest.raises(DslError):
        parse_dsl("computad2 A { objects: x; }\ncomputad2 A { objects: y; }")


def test_parse_cell():
    A = SCENE.A
    t = parse_cell("h(a1, v(a2, a2))", A)
    assert t == HComp(Gen("a1"), VComp(Gen("a2"), Gen("a2")))
    assert normalize(t, A).names() == ["a1", "a2", "a2"]
    assert parse_cell("v(<a1,b1>, <a2,b2>)", SCENE.AxB) == VComp(Gen("<a1,b1>"), Gen("<a2,b2>"))
    with pytest.raises(DslError):
        parse_cell("v(a1,", A)


def test_product_output_reparses():
    P, _, _ = product2(SCENE.A, SCENE.B)
    doc = parse_dsl(format_computad2("P", P))
    assert doc.computads["P"] == P


names = st.sampled_from(["p", "q", "r", "s", "t_1", "w'"])


@st.composite
def documents(draw):
    verts = draw(st.lists(st.sampled_from(["x", "y", "z"]), min_size=1, max_size=3, unique=True))
    edge_names = draw(st.lists(st.sampled_from(["e", "f", "g"]), max_size=3, unique=True))
    edges = {e: (draw(st.sampled_from(verts)), draw(st.sampled_from(verts))) for e in edge_names}
    K0 = Computad2.build(verts, edges)
    gens = {}
    for n in draw(st.lists(names, max_size=4, unique=True)):
        v = draw(st.sampled_from(verts))
        # a loop-free boundary: either both identities or a single edge on each side
        candidates = [e for e, (s, t) in edges.items() if s == v]
        if candidates and draw(st.booleans()):
            e = draw(st.sampled_from(candidates))
            p = K0.skeleton.path(v, e)
            gens[n] = (p, p)
        else:
            gens[n] = (Path.identity(v), Path.identity(v))
    K = Computad2.build(verts, edges, gens)
    L = Computad2.build(["x"], {}, {"a": (Path.identity("x"),) * 2})
    text = format_computad2("K", K) + "\n\n" + format_computad2("L", L)
    if all(b.src1.is_identity for b in K.boundary2.values()) and not edges and gens:
        first = next(iter(gens))
        text += "\n\ncom3 M over K {\n  gens3: u: id(id(%s)) => %s;\n}" % (
            gens[first][0].start,
            first,
        )
    target = next(iter(gens), None)
    if target is not None and not edges:
        v = gens[target][0].start
        text += (
            "\n\nmorphism f: L -> K {\n  vertices: x -> %s;\n  gens2: a -> %s;\n}" % (v, target)
        )
    return text


@settings(max_examples=100)
@given(documents())
def test_print_parse_round_trip(text):
    doc = parse_dsl(text)
    again = parse_dsl(print_dsl(doc))
    assert again == doc
    assert print_dsl(again) == print_dsl(doc)
