"""Finite sets and functions, canonical pullbacks, and pullback-square checks.

Elements are arbitrary hashable labels. Every set remembers insertion order,
so enumerations, pullbacks and witnesses are reproducible run to run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Mapping, Optional


class CodomainMismatch(ValueError):
    pass


class NotCommuting(ValueError):
    pass


class NotMono(ValueError):
    pass


class FinSet:
    """A finite set with a fixed enumeration order."""

    __slots__ = ("elements", "_members")

    def __init__(self, elements: Iterable[Hashable] = ()):
        elements = tuple(elements)
        members = frozenset(elements)
        if len(members) != len(elements):
            seen: set = set()
            dup = next(e for e in elements if e in seen or seen.add(e))
            raise ValueError(f"duplicate element {dup!r}")
        self.elements = elements
        self._members = members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._members

    def __eq__(self, other):
        if not isinstance(other, FinSet):
            return NotImplemented
        return self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"FinSet({list(self.elements)!r})"

    def index(self, x) -> int:
        return self.elements.index(x)

    def same_as(self, other: "FinSet") -> bool:
        """Equality as sets, ignoring order."""
        return self._members == other._members


class SetFun:
    """A total function between finite sets."""

    __slots__ = ("dom", "cod", "_map")

    def __init__(self, dom: FinSet, cod: FinSet, mapping: Mapping[Any, Any]):
        for x in dom:
            if x not in mapping:
                raise ValueError(f"{x!r} is not assigned")
            if mapping[x] not in cod:
                raise ValueError(f"{x!r} -> {mapping[x]!r} lands outside the codomain")
        self.dom = dom
        self.cod = cod
        self._map = {x: mapping[x] for x in dom}

    @classmethod
    def from_callable(cls, dom: FinSet, cod: FinSet, fn) -> "SetFun":
        return cls(dom, cod, {x: fn(x) for x in dom})

    @classmethod
    def identity(cls, s: FinSet) -> "SetFun":
        return cls(s, s, {x: x for x in s})

    def __call__(self, x):
        return self._map[x]

    def items(self):
        return self._map.items()

    def then(self, other: "SetFun") -> "SetFun":
        """Diagrammatic composite: first self, then other."""
        if not self.cod.same_as(other.dom):
            raise CodomainMismatch("functions are not composable")
        return SetFun(self.dom, other.cod, {x: other(y) for x, y in self._map.items()})

    def __eq__(self, other):
        if not isinstance(other, SetFun):
            return NotImplemented
        return (
            self.dom.same_as(other.dom)
            and self.cod.same_as(other.cod)
            and self._map == other._map
        )

    def __repr__(self):
        return f"SetFun({len(self.dom)} -> {len(self.cod)})"


def pullback(f: SetFun, g: SetFun) -> tuple[FinSet, SetFun, SetFun]:
    """Canonical pullback ``{(x, y) | f(x) = g(y)}`` with its two projections.

    Pairs are ordered by ``x`` first, then by ``y``, following the domains'
    enumeration order.
    """
    if not f.cod.same_as(g.cod):
        raise CodomainMismatch("pullback needs a common codomain")
    fibres: dict[Any, list] = {}
    for y in g.dom:
        fibres.setdefault(g(y), []).append(y)
    pairs = FinSet((x, y) for x in f.dom for y in fibres.get(f(x), ()))
    proj1 = SetFun(pairs, f.dom, {p: p[0] for p in pairs})
    proj2 = SetFun(pairs, g.dom, {p: p[1] for p in pairs})
    return pairs, proj1, proj2


def is_mono(f: SetFun) -> bool:
    return len(set(f(x) for x in f.dom)) == len(f.dom)


@dataclass(frozen=True)
class SetSquare:
    """A commuting square::

        P --top--> X
        |          |
       left      right
        v          v
        Y --bottom-> Z
    """

    top: SetFun
    left: SetFun
    right: SetFun
    bottom: SetFun

    def __post_init__(self):
        if not self.top.dom.same_as(self.left.dom):
            raise ValueError("top and left must share the apex")
        if not self.top.cod.same_as(self.right.dom):
            raise ValueError("top must land in the domain of right")
        if not self.left.cod.same_as(self.bottom.dom):
            raise ValueError("left must land in the domain of bottom")
        if not self.right.cod.same_as(self.bottom.cod):
            raise CodomainMismatch("right and bottom must share a codomain")
        for p in self.apex:
            if self.right(self.top(p)) != self.bottom(self.left(p)):
                raise NotCommuting(f"square does not commute at {p!r}")

    @property
    def apex(self) -> FinSet:
        return self.top.dom

    def postcompose(self, m: SetFun) -> "SetSquare":
        """The outer square obtained by following right and bottom with ``m``."""
        return SetSquare(self.top, self.left, self.right.then(m), self.bottom.then(m))


@dataclass(frozen=True)
class PullbackReport:
    is_pullback: bool
    collision: Optional[tuple] = None
    missing: Optional[tuple] = None
    apex_size: int = 0
    pullback_size: int = 0


def comparison_map(s: SetSquare) -> SetFun:
    """The map from the apex into the canonical pullback of (right, bottom)."""
    pairs, _, _ = pullback(s.right, s.bottom)
    return SetFun(s.apex, pairs, {p: (s.top(p), s.left(p)) for p in s.apex})


def check_pullback_square(s: SetSquare) -> PullbackReport:
    """Decide whether ``s`` is a pullback in Set.

    The first collision (in apex order) and the first canonical pair not hit
    by the comparison map are reported as witnesses.
    """
    cmp = comparison_map(s)
    first_hit: dict[Any, Any] = {}
    collision = None
    for p in s.apex:
        image = cmp(p)
        if image in first_hit:
            if collision is None:
                collision = (first_hit[image], p)
        else:
            first_hit[image] = p
    missing = next((pair for pair in cmp.cod if pair not in first_hit), None)
    return PullbackReport(
        is_pullback=collision is None and missing is None,
        collision=collision,
        missing=missing,
        apex_size=len(s.apex),
        pullback_size=len(cmp.cod),
    )


def mono_reduction_check(inner: SetSquare, m: SetFun) -> bool:
    """Check that post-composing with a mono does not change the pullback verdict."""
    if not is_mono(m):
        raise NotMono("the comparison leg is not injective")
    outer = inner.postcompose(m)
    return check_pullback_square(inner).is_pullback == check_pullback_square(outer).is_pullback
