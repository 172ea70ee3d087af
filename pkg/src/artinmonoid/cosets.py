"""Monoid cosets: end factors, minimal representatives, and intersections.

A coset is the equivalence class of an element under right multiplication by
a submonoid generated by a subset of the generators.  Every class has a
unique minimal-length representative, obtained by stripping the maximal
right divisor supported on the subset (the end factor).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .defining_graph import DefiningGraph, GraphError, is_finite_type
from .monoid import (
    MonoidElement,
    element,
    gcd_left,
    generator,
    guaranteed_lcm_bound,
    identity,
    lcm_left,
    left_divides,
    length,
    right_divisors,
    right_quotient,
    right_descents,
)


class BoundTooSmall(RuntimeError):
    """An intersection could not be decided within the given length bound."""


def end_factor(a: MonoidElement, subset: Iterable[str]) -> MonoidElement:
    """The maximal right divisor of ``a`` supported inside ``subset``.

    Computed by scanning the right divisors of the memoized word class; the
    iterative growth algorithm in ``end_factor_iterative`` is the scalable
    alternative and the two are differentially tested.
    """
    sub = _checked(a.graph, subset)
    cands = [d for d in right_divisors(a) if d.support <= sub]
    best = max(cands, key=lambda d: (len(d), d.word))
    from .monoid import right_divides
    for d in cands:
        if not right_divides(d, best):
            raise AssertionError(
                f"end factor of {a!r} over {sorted(sub)} is not unique: "
                f"{d!r} is not a right divisor of {best!r}")
    return best


def end_factor_iterative(a: MonoidElement, subset: Iterable[str]) -> MonoidElement:
    """End factor by fixed-point growth of a right divisor inside the subset.

    Starting from the identity, repeatedly absorb any subset generator that
    right-divides the remaining prefix.  Any maximal chain reaches the end
    factor: a right divisor x strictly below it extends by some subset
    generator dividing the prefix, because the quotient of the end factor by
    x is a nontrivial element supported in the subset.
    """
    sub = _checked(a.graph, subset)
    x = identity(a.graph)
    prefix = a
    while True:
        opts = sorted(right_descents(prefix) & sub)
        if not opts:
            return x
        g = generator(a.graph, opts[0])
        prefix = right_quotient(g, prefix)
        x = g * x


def min_rep(a: MonoidElement, subset: Iterable[str]) -> MonoidElement:
    """The minimal-length coset representative: a with its end factor removed."""
    return right_quotient(end_factor(a, subset), a)


@dataclass(frozen=True)
class MonoidCoset:
    """The coset of ``min_rep`` under the submonoid on ``subset``."""

    min_rep: MonoidElement
    subset: frozenset[str]

    def __post_init__(self) -> None:
        _checked(self.graph, self.subset)

    @property
    def graph(self) -> DefiningGraph:
        return self.min_rep.graph

    def __repr__(self) -> str:
        inner = ".".join(self.min_rep.word) or "e"
        return f"[{inner}]_{{{','.join(sorted(self.subset))}}}"

    def __contains__(self, x: MonoidElement) -> bool:
        return coset_of(x, self.subset) == self

    def key(self):
        """Deterministic sort key, for stable exports."""
        return (sorted(self.subset), len(self.min_rep), self.min_rep.word)


def _checked(graph: DefiningGraph, subset: Iterable[str]) -> frozenset[str]:
    sub = frozenset(subset)
    for g in sub:
        if g not in graph.generators:
            raise GraphError(f"unknown generator {g!r}")
    return sub


def coset_of(a: MonoidElement, subset: Iterable[str]) -> MonoidCoset:
    sub = _checked(a.graph, subset)
    return MonoidCoset(min_rep(a, sub), sub)


def coset_members(c: MonoidCoset, max_len: int) -> frozenset[MonoidElement]:
    """All members up to ``max_len``: the representative times subset words."""
    graph = c.graph
    out = set()
    frontier = {c.min_rep}
    while frontier:
        out |= frontier
        nxt = set()
        for x in frontier:
            if len(x) >= max_len:
                continue
            for g in sorted(c.subset):
                y = x * generator(graph, g)
                if y not in out:
                    nxt.add(y)
        frontier = nxt
    return frozenset(x for x in out if len(x) <= max_len)


def coset_subset(c1: MonoidCoset, c2: MonoidCoset) -> bool:
    """Whether every member of c1 is a member of c2."""
    if c1.graph != c2.graph:
        raise GraphError("cosets live over different defining graphs")
    if not c1.subset <= c2.subset:
        return False
    return min_rep(c1.min_rep, c2.subset) == c2.min_rep


def coset_intersection_status(c1: MonoidCoset, c2: MonoidCoset,
                              bound: int) -> tuple[str, Optional[MonoidCoset]]:
    """Intersect two cosets, reporting how decisive the bounded search was.

    Returns one of ("nonempty", coset), ("empty", None), ("unknown", None).
    Any common member forces the least common left multiple of the two
    representatives to exist and to lie in both cosets, in which case the
    intersection is its coset over the intersected subset.  So an lcm found
    within ``bound`` decides the question either way.  If the lcm search is
    exhausted, finite-type supports searched past the guaranteed bound
    certify emptiness; anything else stays unknown.
    """
    if c1.graph != c2.graph:
        raise GraphError("cosets live over different defining graphs")
    meet = c1.subset & c2.subset
    if c1.min_rep == c2.min_rep:
        return "nonempty", MonoidCoset(c1.min_rep, meet)
    join = lcm_left([c1.min_rep, c2.min_rep], bound)
    if join is not None:
        if join in c1 and join in c2:
            return "nonempty", coset_of(join, meet)
        return "empty", None
    support = c1.min_rep.support | c2.min_rep.support
    if is_finite_type(c1.graph, support):
        needed = guaranteed_lcm_bound(
            c1.graph, support, max(len(c1.min_rep), len(c2.min_rep)))
        if bound >= needed:
            raise AssertionError(
                "lcm missing inside a finite-type submonoid past the "
                "guaranteed bound")
        return "unknown", None
    return "unknown", None


def coset_intersection(c1: MonoidCoset, c2: MonoidCoset,
                       bound: int) -> Optional[MonoidCoset]:
    """The intersection as a coset, or None when no member exists in bound.

    Raises BoundTooSmall for finite-type supports whose search bound was too
    small to certify emptiness, so an absent answer is never ambiguous there.
    """
    status, out = coset_intersection_status(c1, c2, bound)
    if status == "nonempty":
        return out
    if status == "unknown":
        support = c1.min_rep.support | c2.min_rep.support
        if is_finite_type(c1.graph, support):
            raise BoundTooSmall(
                f"no common multiple of the representatives within length "
                f"{bound}; raise the bound to certify emptiness")
    return None


def group_coset_trace(a: MonoidElement, subset: Iterable[str], cap: int,
                      pair_slack: int = 0) -> frozenset[MonoidElement]:
    """Positive elements of the group coset a A_T, up to length ``cap``.

    Multiplies ``a`` by group elements of the finite-type special subgroup in
    fraction form c d^{-1} with c, d supported on the subset, keeping the
    products that land back in the monoid.  Fraction parts run up to
    cap + len(a) + pair_slack letters, enough to reach every member at desk
    scale; agreement with ``coset_members`` is part of the test-suite.
    """
    sub = _checked(a.graph, subset)
    if not is_finite_type(a.graph, sub):
        raise GraphError(f"subset {sorted(sub)} is not finite type")
    graph = a.graph
    part_cap = cap + len(a) + pair_slack
    parts = _subset_elements(graph, sub, part_cap)
    out = set()
    for c in parts:
        ac = a * c
        for d in parts:
            if len(ac) - len(d) > cap or len(d) > len(ac):
                continue
            from .monoid import right_divides
            if right_divides(d, ac):
                out.add(right_quotient(d, ac))
    return frozenset(out)


def _subset_elements(graph: DefiningGraph, sub: frozenset[str],
                     max_len: int) -> list[MonoidElement]:
    out = {identity(graph)}
    frontier = {identity(graph)}
    while frontier:
        nxt = set()
        for x in frontier:
            if len(x) >= max_len:
                continue
            for g in sorted(sub):
                y = x * generator(graph, g)
                if y not in out:
                    out.add(y)
                    nxt.add(y)
        frontier = nxt
    return sorted(out, key=lambda x: (len(x), x.word))


def parse_coset(graph: DefiningGraph, text: str) -> MonoidCoset:
    """Parse ``[<word>]_{t1,t2,...}``; the word may be ``e`` for the identity."""
    text = text.strip()
    if not (text.startswith("[") and "]_{" in text and text.endswith("}")):
        raise GraphError(f"malformed coset literal {text!r}")
    word_part, sub_part = text[1:-1].split("]_{", 1)
    word = () if word_part.strip() in ("", "e") else tuple(word_part.split())
    subset = frozenset(x.strip() for x in sub_part.split(",") if x.strip())
    return coset_of(element(graph, word), subset)


def coset_to_text(c: MonoidCoset) -> str:
    inner = " ".join(c.min_rep.word) or "e"
    return f"[{inner}]_{{{','.join(sorted(c.subset))}}}"
