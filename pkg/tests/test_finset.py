import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from computads.finset import (
    CodomainMismatch,
    FinSet,
    NotCommuting,
    NotMono,
    SetFun,
    SetSquare,
    check_pullback_square,
    is_mono,
    mono_reduction_check,
    pullback,
)


def fun(dom, cod, mapping):
    return SetFun(FinSet(dom), FinSet(cod), mapping)


def canonical_square(f, g):
    P, p1, p2 = pullback(f, g)
    return SetSquare(p1, p2, f, g)


@st.composite
def cospans(draw):
    Z = list(range(draw(st.integers(1, 4))))
    X = [f"x{i}" for i in range(draw(st.integers(0, 5)))]
    Y = [f"y{i}" for i in range(draw(st.integers(0, 5)))]
    f = {x: draw(st.sampled_from(Z)) for x in X}
    g = {y: draw(st.sampled_from(Z)) for y in Y}
    return fun(X, Z, f), fun(Y, Z, g)


def test_finset_rejects_duplicates():
    with pytest.raises(ValueError):
        FinSet(["a", "a"])


def test_setfun_must_be_total_and_land_in_codomain():
    with pytest.raises(ValueError):
        fun(["a", "b"], ["z"], {"a": "z"})
    with pytest.raises(ValueError):
        fun(["a"], ["z"], {"a": "w"})


def test_pullback_over_singleton_is_product():
    P, _, _ = pullback(fun(["a"], ["z"], {"a": "z"}), fun(["b"], ["z"], {"b": "z"}))
    assert list(P) == [("a", "b")]


def test_kernel_pair_of_identity_is_diagonal():
    ident = SetFun.identity(FinSet([1, 2]))
    P, _, _ = pullback(ident, ident)
    assert list(P) == [(1, 1), (2, 2)]


def test_pullback_codomain_mismatch():
    with pytest.raises(CodomainMismatch):
        pullback(fun(["a"], ["z"], {"a": "z"}), fun(["b"], ["w"], {"b": "w"}))


@given(cospans())
def test_pullback_is_the_compatible_pairs(fg):
    f, g = fg
    P, p1, p2 = pullback(f, g)
    expected = {(x, y) for x in f.dom for y in g.dom if f(x) == g(y)}
    assert set(P) == expected
    assert all(f(p1(p)) == g(p2(p)) for p in P)


@given(st.integers(0, 5), st.integers(0, 5))
def test_pullback_over_a_point_has_product_size(m, n):
    f = fun(range(m), ["*"], {i: "*" for i in range(m)})
    g = fun(range(n), ["*"], {i: "*" for i in range(n)})
    P, _, _ = pullback(f, g)
    assert len(P) == m * n


def test_is_mono():
    assert is_mono(SetFun.identity(FinSet([1, 2, 3])))
    assert not is_mono(fun([1, 2], ["z"], {1: "z", 2: "z"}))


def test_square_must_commute():
    X = FinSet([0, 1])
    with pytest.raises(NotCommuting):
        SetSquare(
            SetFun.identity(X),
            SetFun.identity(X),
            SetFun.identity(X),
            fun([0, 1], [0, 1], {0: 1, 1: 0}),
        )


@given(cospans())
def test_canonical_square_is_a_pullback(fg):
    report = check_pullback_square(canonical_square(*fg))
    assert report.is_pullback
    assert report.collision is None and report.missing is None


def test_empty_apex_reports_missing_pair():
    f = fun(["a"], ["z"], {"a": "z"})
    g = fun(["b"], ["z"], {"b": "z"})
    empty = FinSet()
    s = SetSquare(SetFun(empty, f.dom, {}), SetFun(empty, g.dom, {}), f, g)
    report = check_pullback_square(s)
    assert not report.is_pullback
    assert report.missing == ("a", "b")
    assert report.collision is None


def test_collision_witness_is_first_in_apex_order():
    f = fun(["a"], ["z"], {"a": "z"})
    g = fun(["b"], ["z"], {"b": "z"})
    P = FinSet(["p", "q", "r"])
    s = SetSquare(
        SetFun(P, f.dom, dict.fromkeys(P, "a")), SetFun(P, g.dom, dict.fromkeys(P, "b")), f, g
    )
    report = check_pullback_square(s)
    assert report.collision == ("p", "q")


@given(cospans(), st.data())
def test_collision_witnesses_really_collide(fg, data):
    f, g = fg
    P, p1, p2 = pullback(f, g)
    # double up the apex to force collisions when it is non-empty
    apex = FinSet([(p, i) for p in P for i in range(data.draw(st.integers(1, 2)))])
    s = SetSquare(
        SetFun(apex, f.dom, {q: p1(q[0]) for q in apex}),
        SetFun(apex, g.dom, {q: p2(q[0]) for q in apex}),
        f,
        g,
    )
    r = check_pullback_square(s)
    if r.collision:
        p, q = r.collision
        assert p != q and s.top(p) == s.top(q) and s.left(p) == s.left(q)
    if r.missing:
        x, y = r.missing
        assert f(x) == g(y)
    assert r.is_pullback == (r.collision is None and r.missing is None)


def test_mono_reduction_rejects_non_injective():
    f = fun(["a"], ["z", "w"], {"a": "z"})
    s = canonical_square(f, f)
    with pytest.raises(NotMono):
        mono_reduction_check(s, fun(["z", "w"], ["*"], {"z": "*", "w": "*"}))


def test_mono_reduction_on_canonical_square():
    f = fun(["a", "b"], ["z", "w"], {"a": "z", "b": "w"})
    s = canonical_square(f, f)
    m = fun(["z", "w"], ["z", "w", "v"], {"z": "z", "w": "w"})
    assert mono_reduction_check(s, m)


def random_square(rng):
    Z = list(range(rng.randint(1, 3)))
    X = [f"x{i}" for i in range(rng.randint(1, 4))]
    Y = [f"y{i}" for i in range(rng.randint(1, 4))]
    f = fun(X, Z, {x: rng.choice(Z) for x in X})
    g = fun(Y, Z, {y: rng.choice(Z) for y in Y})
    P, p1, p2 = pullback(f, g)
    # a random sub-multiset of the canonical pullback as apex
    chosen = [(p, i) for p in P for i in range(rng.randint(0, 2))]
    apex = FinSet(chosen)
    s = SetSquare(
        SetFun(apex, f.dom, {q: p1(q[0]) for q in apex}),
        SetFun(apex, g.dom, {q: p2(q[0]) for q in apex}),
        f,
        g,
    )
    extra = rng.randint(0, 3)
    W = Z + [f"w{i}" for i in range(extra)]
    images = rng.sample(W, len(Z))
    m = fun(Z, W, dict(zip(Z, images)))
    return s, m


def test_mono_reduction_random_trials():
    rng = random.Random(7)
    for _ in range(100):
        s, m = random_square(rng)
        assert mono_reduction_check(s, m)
