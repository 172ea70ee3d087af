"""Defining graphs for Artin monoids and the finite-type classification.

A defining graph carries an ordered generating set and a label m >= 2 for
each edge; a missing edge means the pair has label infinity (no relation).
Finiteness of the Coxeter group of a subset is decided exactly, by matching
connected components of the Coxeter diagram against the classification of
finite Coxeter groups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Optional


class GraphError(ValueError):
    """Raised for malformed graph text or inconsistent graph data."""


def _pair(a: str, b: str) -> frozenset[str]:
    if a == b:
        raise GraphError(f"self-loop on generator {a!r}")
    return frozenset((a, b))


@dataclass(frozen=True)
class DefiningGraph:
    """A finite labelled graph: ordered generators plus finite edge labels.

    ``edges`` holds one entry per labelled edge as (a, b, m) with a, b in
    generator order and m >= 2.  Pairs without an entry have label infinity.
    """

    generators: tuple[str, ...]
    edges: tuple[tuple[str, str, int], ...]

    def __post_init__(self) -> None:
        if len(set(self.generators)) != len(self.generators):
            raise GraphError("duplicate generator")
        seen: set[frozenset[str]] = set()
        for a, b, m in self.edges:
            if a not in self.generators or b not in self.generators:
                raise GraphError(f"edge ({a},{b}) uses unknown generator")
            if m < 2:
                raise GraphError(f"label {m} on ({a},{b}) is below 2")
            p = _pair(a, b)
            if p in seen:
                raise GraphError(f"duplicate edge ({a},{b})")
            seen.add(p)

    @property
    def _labels(self) -> Mapping[frozenset[str], int]:
        try:
            return self.__dict__["_label_map"]
        except KeyError:
            m = {_pair(a, b): v for a, b, v in self.edges}
            self.__dict__["_label_map"] = m
            return m

    def label(self, a: str, b: str) -> Optional[int]:
        """The label m_ab, or None for infinity (no edge)."""
        for g in (a, b):
            if g not in self.generators:
                raise GraphError(f"unknown generator {g!r}")
        return self._labels.get(_pair(a, b))

    def index(self, g: str) -> int:
        try:
            return self.generators.index(g)
        except ValueError:
            raise GraphError(f"unknown generator {g!r}") from None

    def word_key(self, word: Iterable[str]):
        """Sort key ordering words lexicographically by generator order."""
        return tuple(self.index(g) for g in word)


def make_graph(generators: Iterable[str],
               labels: Mapping[tuple[str, str], int] | Iterable[tuple[str, str, int]]) -> DefiningGraph:
    """Build a graph from any edge listing, normalizing edge order."""
    gens = tuple(generators)
    items = labels.items() if isinstance(labels, Mapping) else [((a, b), m) for a, b, m in labels]
    order = {g: i for i, g in enumerate(gens)}
    edges = []
    for (a, b), m in items:
        if a not in order or b not in order:
            raise GraphError(f"edge ({a},{b}) uses unknown generator")
        x, y = sorted((a, b), key=order.__getitem__)
        edges.append((x, y, int(m)))
    edges.sort(key=lambda e: (order[e[0]], order[e[1]]))
    return DefiningGraph(gens, tuple(edges))


def parse_graph(text: str) -> DefiningGraph:
    """Parse the line-oriented graph format.

    Statements, one per line: ``gens <name>+`` and ``edge <a> <b> <label>``.
    ``#`` starts a comment.  The serializer ``graph_to_text`` round-trips.
    """
    gens: list[str] = []
    edges: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "gens":
            if len(parts) < 2:
                raise GraphError(f"line {lineno}: 'gens' needs at least one name")
            gens.extend(parts[1:])
        elif parts[0] == "edge":
            if len(parts) != 4:
                raise GraphError(f"line {lineno}: expected 'edge <a> <b> <label>'")
            a, b, raw_m = parts[1], parts[2], parts[3]
            try:
                m = int(raw_m)
            except ValueError:
                raise GraphError(f"line {lineno}: label {raw_m!r} is not an integer") from None
            edges.append((a, b, m))
        else:
            raise GraphError(f"line {lineno}: unknown statement {parts[0]!r}")
    try:
        return make_graph(gens, edges)
    except GraphError as e:
        raise GraphError(str(e)) from None


def graph_to_text(graph: DefiningGraph) -> str:
    lines = ["gens " + " ".join(graph.generators)]
    lines += [f"edge {a} {b} {m}" for a, b, m in graph.edges]
    return "\n".join(lines) + "\n"


def full_subgraph(graph: DefiningGraph, subset: Iterable[str]) -> DefiningGraph:
    """The graph induced on ``subset``, keeping the ambient generator order."""
    sub = _check_subset(graph, subset)
    gens = tuple(g for g in graph.generators if g in sub)
    edges = tuple(e for e in graph.edges if e[0] in sub and e[1] in sub)
    return DefiningGraph(gens, edges)


def _check_subset(graph: DefiningGraph, subset: Iterable[str]) -> frozenset[str]:
    sub = frozenset(subset)
    for g in sub:
        if g not in graph.generators:
            raise GraphError(f"unknown generator {g!r}")
    return sub


# Connected components of the Coxeter diagram: label-2 pairs commute and are
# dropped; any other labelled pair, including infinity, is an edge.

def _coxeter_components(graph: DefiningGraph, sub: frozenset[str]) -> list[list[str]]:
    adj: dict[str, set[str]] = {g: set() for g in sub}
    for a in sub:
        for b in sub:
            if a < b and graph.label(a, b) != 2:
                adj[a].add(b)
                adj[b].add(a)
    comps: list[list[str]] = []
    todo = set(sub)
    while todo:
        root = next(iter(todo))
        comp, stack = {root}, [root]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in comp:
                    comp.add(nxt)
                    stack.append(nxt)
        todo -= comp
        comps.append(sorted(comp, key=graph.index))
    return comps


@dataclass(frozen=True)
class ComponentType:
    """One irreducible factor of a finite Coxeter group."""

    name: str
    order: int
    reflections: int  # length of the longest element


_EXCEPTIONAL = {
    "E6": (51840, 36),
    "E7": (2903040, 63),
    "E8": (696729600, 120),
    "F4": (1152, 24),
    "H3": (120, 15),
    "H4": (14400, 60),
}


def _classify_component(graph: DefiningGraph, comp: list[str]) -> Optional[ComponentType]:
    """Match one Coxeter-diagram component against the finite classification."""
    n = len(comp)
    if n == 1:
        return ComponentType("A1", 2, 1)
    edges = []
    for i, a in enumerate(comp):
        for b in comp[i + 1:]:
            m = graph.label(a, b)
            if m != 2:
                if m is None:
                    return None
                edges.append((a, b, m))
    if len(edges) != n - 1:
        return None  # a cycle; no finite diagram contains one
    deg: dict[str, int] = {g: 0 for g in comp}
    for a, b, _ in edges:
        deg[a] += 1
        deg[b] += 1
    branch = [g for g in comp if deg[g] >= 3]
    if branch:
        if len(branch) > 1 or deg[branch[0]] > 3:
            return None
        if any(m != 3 for _, _, m in edges):
            return None
        arms = sorted(_arm_lengths(edges, branch[0]))
        if arms[0] == 1 and arms[1] == 1:
            k = arms[2] + 3
            return ComponentType(f"D{k}", 2 ** (k - 1) * math.factorial(k), k * (k - 1))
        if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
            name = {2: "E6", 3: "E7", 4: "E8"}[arms[2]]
            return ComponentType(name, *_EXCEPTIONAL[name])
        return None
    # a path; read off its label sequence
    labels = _path_labels(edges, comp, deg)
    big = [(i, m) for i, m in enumerate(labels) if m > 3]
    if not big:
        return ComponentType(f"A{n}", math.factorial(n + 1), n * (n + 1) // 2)
    if len(big) > 1:
        return None
    i, q = big[0]
    at_end = i in (0, n - 2)
    if n == 2:
        return ComponentType(f"I2({q})", 2 * q, q)
    if q == 4:
        if at_end:
            return ComponentType(f"B{n}", 2 ** n * math.factorial(n), n * n)
        if n == 4:
            return ComponentType("F4", *_EXCEPTIONAL["F4"])
        return None
    if q == 5 and at_end and n in (3, 4):
        name = "H3" if n == 3 else "H4"
        return ComponentType(name, *_EXCEPTIONAL[name])
    return None


def _arm_lengths(edges: list[tuple[str, str, int]], center: str) -> list[int]:
    adj: dict[str, list[str]] = {}
    for a, b, _ in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    arms = []
    for start in adj[center]:
        length, prev, cur = 1, center, start
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return arms


def _path_labels(edges: list[tuple[str, str, int]], comp: list[str], deg: dict[str, int]) -> list[int]:
    lab = {_pair(a, b): m for a, b, m in edges}
    adj: dict[str, list[str]] = {g: [] for g in comp}
    for a, b, _ in edges:
        adj[a].append(b)
        adj[b].append(a)
    start = min((g for g in comp if deg[g] == 1), key=comp.index)
    seq = []
    prev, cur = None, start
    while True:
        nxt = [x for x in adj[cur] if x != prev]
        if not nxt:
            break
        seq.append(lab[_pair(cur, nxt[0])])
        prev, cur = cur, nxt[0]
    return seq


@lru_cache(maxsize=None)
def _component_types(graph: DefiningGraph, sub: frozenset[str]) -> Optional[tuple[ComponentType, ...]]:
    out = []
    for comp in _coxeter_components(graph, sub):
        t = _classify_component(graph, comp)
        if t is None:
            return None
        out.append(t)
    return tuple(out)


def is_finite_type(graph: DefiningGraph, subset: Iterable[str]) -> bool:
    """Whether the Coxeter group of ``subset`` is finite."""
    sub = _check_subset(graph, subset)
    return _component_types(graph, sub) is not None


def coxeter_order(graph: DefiningGraph, subset: Iterable[str]) -> int:
    """The order of the (finite) Coxeter group of ``subset``."""
    types = _component_types(graph, _check_subset(graph, subset))
    if types is None:
        raise GraphError(f"subset {sorted(subset)} is not finite type")
    return math.prod(t.order for t in types)


def reflection_count(graph: DefiningGraph, subset: Iterable[str]) -> int:
    """Number of reflections of the finite Coxeter group of ``subset``.

    Equals the length of its longest element, hence the length of the
    Garside element of the corresponding Artin monoid.
    """
    types = _component_types(graph, _check_subset(graph, subset))
    if types is None:
        raise GraphError(f"subset {sorted(subset)} is not finite type")
    return sum(t.reflections for t in types)


@dataclass(frozen=True)
class SphericalFamily:
    """All subsets of the generators whose Coxeter group is finite.

    Closed under taking subsets; contains the empty set and all singletons.
    """

    graph: DefiningGraph
    subsets: frozenset[frozenset[str]]

    def __contains__(self, subset: Iterable[str]) -> bool:
        return frozenset(subset) in self.subsets

    def __iter__(self):
        return iter(sorted(self.subsets, key=lambda t: (len(t), sorted(t))))

    @property
    def maximal(self) -> tuple[frozenset[str], ...]:
        out = [t for t in self.subsets
               if not any(t < u for u in self.subsets)]
        return tuple(sorted(out, key=lambda t: (len(t), sorted(t))))


@lru_cache(maxsize=None)
def spherical_subsets(graph: DefiningGraph) -> SphericalFamily:
    """Every finite-type subset, found by growing from the singletons.

    Subset closure of finite type makes the level-by-level search exhaustive:
    a finite-type set of size k has all its size k-1 subsets finite type.
    """
    current: set[frozenset[str]] = {frozenset()}
    found: set[frozenset[str]] = {frozenset()}
    while current:
        nxt: set[frozenset[str]] = set()
        for t in current:
            for g in graph.generators:
                if g in t:
                    continue
                cand = t | {g}
                if cand not in found and is_finite_type(graph, cand):
                    nxt.add(cand)
        found |= nxt
        current = nxt
    return SphericalFamily(graph, frozenset(found))
