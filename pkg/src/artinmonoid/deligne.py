"""The monoid Deligne complex, built by radius, with its verification tools.

Vertices are monoid cosets over finite-type subsets; a cube is an interval
(base coset, top subset) and its faces are the sub-intervals.  The complex of
radius k is the union of the fundamental domain's translates by elements of
length at most k, with vertices identified through minimal representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional

from .cosets import MonoidCoset, coset_of
from .defining_graph import DefiningGraph, GraphError, spherical_subsets
from .homology import homology_from_boundaries
from .monoid import (
    MonoidElement,
    element,
    generator,
    identity,
    length,
    right_descents,
)


@dataclass(frozen=True)
class Cube:
    """The interval of cosets between ``base`` and the coset over ``top``."""

    base: MonoidCoset
    top: frozenset[str]

    def __post_init__(self) -> None:
        if not self.base.subset <= self.top:
            raise GraphError(f"cube top {sorted(self.top)} does not contain "
                             f"the base subset {sorted(self.base.subset)}")

    @property
    def dim(self) -> int:
        return len(self.top - self.base.subset)

    @property
    def graph(self) -> DefiningGraph:
        return self.base.graph

    def vertex(self, subset: frozenset[str]) -> MonoidCoset:
        if not self.base.subset <= subset <= self.top:
            raise GraphError("subset outside the cube interval")
        return coset_of(self.base.min_rep, subset)

    def vertices(self) -> Iterator[MonoidCoset]:
        free = sorted(self.top - self.base.subset)
        for r in range(len(free) + 1):
            for extra in combinations(free, r):
                yield self.vertex(self.base.subset | frozenset(extra))

    def faces(self) -> Iterator["Cube"]:
        """All faces, the cube itself included."""
        free = sorted(self.top - self.base.subset)
        for nb in range(len(free) + 1):
            for bottom_extra in combinations(free, nb):
                lo = self.base.subset | frozenset(bottom_extra)
                rest = [g for g in free if g not in bottom_extra]
                for nt in range(len(rest) + 1):
                    for kept in combinations(rest, nt):
                        hi = lo | frozenset(kept)
                        yield Cube(coset_of(self.base.min_rep, lo), hi)

    def facets(self, sign_order: tuple[str, ...]) -> Iterator[tuple[int, "Cube"]]:
        """Codimension-one faces with the cubical boundary signs.

        Directions are ordered by the ambient generator order; direction i
        contributes (-1)^i (upper face - lower face).
        """
        free = sorted(self.top - self.base.subset, key=sign_order.index)
        for i, g in enumerate(free):
            sign = -1 if i % 2 else 1
            upper = Cube(coset_of(self.base.min_rep, self.base.subset | {g}),
                         self.top)
            lower = Cube(self.base, self.top - {g})
            yield sign, upper
            yield -sign, lower

    def key(self):
        return (self.dim, self.base.key(), sorted(self.top))

    def __repr__(self) -> str:
        return f"Cube({self.base!r} -> {{{','.join(sorted(self.top))}}})"


@dataclass(frozen=True)
class CubeComplex:
    """A face-closed set of cubes over one defining graph."""

    graph: DefiningGraph
    cubes: frozenset[Cube]

    @staticmethod
    def from_generating(graph: DefiningGraph, generating: Iterable[Cube]) -> "CubeComplex":
        closed: set[Cube] = set()
        for c in generating:
            if c not in closed:
                closed.update(c.faces())
        return CubeComplex(graph, frozenset(closed))

    @property
    def vertices(self) -> frozenset[MonoidCoset]:
        return frozenset(c.base for c in self.cubes if c.dim == 0)

    def cubes_of_dim(self, d: int) -> list[Cube]:
        return sorted((c for c in self.cubes if c.dim == d), key=Cube.key)

    def dimension(self) -> int:
        return max((c.dim for c in self.cubes), default=-1)

    def contains_complex(self, other: "CubeComplex") -> bool:
        return other.cubes <= self.cubes

    def union(self, other: "CubeComplex") -> "CubeComplex":
        return CubeComplex(self.graph, self.cubes | other.cubes)

    def restrict_to_vertices(self, keep: frozenset[MonoidCoset]) -> "CubeComplex":
        """The full subcomplex on the given vertex set."""
        kept = [c for c in self.cubes if all(v in keep for v in c.vertices())]
        return CubeComplex(self.graph, frozenset(kept))

    def maximal_cubes(self) -> list[Cube]:
        all_proper: set[Cube] = set()
        for c in self.cubes:
            for f in c.faces():
                if f != c:
                    all_proper.add(f)
        return sorted((c for c in self.cubes if c not in all_proper), key=Cube.key)


def fundamental_domain(graph: DefiningGraph) -> CubeComplex:
    """All cubes on identity-based cosets over finite-type subsets."""
    return translate_domain(identity(graph))


def translate_domain(b: MonoidElement) -> CubeComplex:
    """The chamber of ``b``: the fundamental domain moved by left multiplication."""
    graph = b.graph
    fam = spherical_subsets(graph)
    tops = fam.maximal
    gen = [Cube(coset_of(b, frozenset()), top) for top in tops]
    return CubeComplex.from_generating(graph, gen)


def elements_of_length_up_to(graph: DefiningGraph, k: int) -> list[MonoidElement]:
    out = {identity(graph)}
    frontier = {identity(graph)}
    for _ in range(k):
        nxt = set()
        for x in frontier:
            for g in graph.generators:
                y = x * generator(graph, g)
                if y not in out:
                    out.add(y)
                    nxt.add(y)
        frontier = nxt
    return sorted(out, key=lambda x: (len(x), x.word))


def build_complex(graph: DefiningGraph, radius: int) -> CubeComplex:
    """Union of all chambers of elements of length at most ``radius``."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    cubes: set[Cube] = set()
    for a in elements_of_length_up_to(graph, radius):
        cubes |= translate_domain(a).cubes
    return CubeComplex(graph, frozenset(cubes))


def enumerate_complex(graph: DefiningGraph, radius: int) -> CubeComplex:
    """The same complex by direct coset enumeration, as a differential oracle.

    Collects every cube whose base coset has a representative of length at
    most ``radius`` instead of translating whole chambers.
    """
    fam = spherical_subsets(graph)
    subsets = list(fam)
    cubes: set[Cube] = set()
    for a in elements_of_length_up_to(graph, radius):
        for t1 in subsets:
            base = coset_of(a, t1)
            if len(base.min_rep) > radius:
                continue
            for t2 in subsets:
                if t1 <= t2:
                    cubes.add(Cube(base, t2))
    return CubeComplex(graph, frozenset(cubes))


# -- chamber boundaries and the collapse schedule ------------------------------

def chamber_boundary(a: MonoidElement, radius: Optional[int] = None) -> CubeComplex:
    """Overlap of the chamber of ``a`` with the previous radius stage.

    Spanned by the cosets of ``a`` whose subset meets the right-descent set,
    which is exactly the chamber's intersection with the complex one radius
    down; the literal intersection is cross-checked in the tests.
    """
    if len(a) == 0:
        raise ValueError("the identity chamber has no previous stage")
    descents = right_descents(a)
    chamber = translate_domain(a)
    keep = [c for c in chamber.cubes if c.base.subset & descents]
    return CubeComplex(a.graph, frozenset(keep))


@dataclass(frozen=True)
class CollapseCertificate:
    """An ordered elementary-collapse schedule ending at a single vertex."""

    start: CubeComplex
    steps: tuple[tuple[Cube, Cube], ...]  # (free face, coface)
    end_vertex: MonoidCoset

    def validate(self) -> None:
        """Replay the schedule, checking each face is genuinely free."""
        remaining = set(self.start.cubes)
        for face, coface in self.steps:
            if face not in remaining or coface not in remaining:
                raise AssertionError(f"collapse step removes missing cube {face!r}")
            cofaces = [c for c in remaining
                       if c != face and face in set(c.faces())]
            if cofaces != [coface]:
                raise AssertionError(
                    f"face {face!r} is not free: contained in "
                    f"{len(cofaces)} remaining cubes, expected exactly {coface!r}")
            remaining.discard(face)
            remaining.discard(coface)
        expect = {Cube(MonoidCoset(self.end_vertex.min_rep, self.end_vertex.subset),
                       self.end_vertex.subset)}
        if remaining != expect:
            raise AssertionError(
                f"collapse left {len(remaining)} cubes, not the single end vertex")


def retraction_certificate(a: MonoidElement) -> CollapseCertificate:
    """Collapse the chamber-boundary of ``a`` to the vertex of its descents.

    The schedule follows the projection onto subsets of the right-descent
    set: cubes whose top sticks out of the descent set are paired by toggling
    the largest protruding generator in their base; the remaining cone over
    the descent vertex is paired by toggling the largest missing generator in
    the top.  Pairs are collapsed greedily, re-scanning until either nothing
    is left but the target vertex or no pair is free, which would be reported
    rather than skipped.
    """
    y = chamber_boundary(a)
    graph = a.graph
    descents = right_descents(a)
    order = graph.generators

    def partner(c: Cube) -> tuple[Cube, Cube] | None:
        lo, hi = c.base.subset, c.top
        outside = hi - descents
        if outside:
            # Toggle in the base; rebasing must go through the chamber
            # element, since a smaller base coset is not determined by the
            # minimal representative of the larger one.
            g = max(outside, key=order.index)
            other_lo = lo - {g} if g in lo else lo | {g}
            other = Cube(coset_of(a, other_lo), hi)
        else:
            if lo == descents:
                return None  # the critical target vertex
            g = max(descents - lo, key=order.index)
            other_hi = hi - {g} if g in hi else hi | {g}
            other = Cube(c.base, other_hi)
        pair = (c, other) if c.dim < other.dim else (other, c)
        return pair

    pairs: set[tuple[Cube, Cube]] = set()
    for c in y.cubes:
        p = partner(c)
        if p is not None:
            pairs.add(p)

    remaining = set(y.cubes)
    schedule: list[tuple[Cube, Cube]] = []
    todo = sorted(pairs, key=lambda p: (-p[1].dim, p[1].key(), p[0].key()))
    while todo:
        progressed = False
        deferred = []
        for face, coface in todo:
            cofaces = [c for c in remaining if c != face and face in set(c.faces())]
            if cofaces == [coface]:
                remaining.discard(face)
                remaining.discard(coface)
                schedule.append((face, coface))
                progressed = True
            else:
                deferred.append((face, coface))
        if not progressed:
            raise AssertionError(
                f"collapse stalled with {len(deferred)} matched pairs left for "
                f"{a!r}; the matching is not realizable greedily")
        todo = deferred

    cert = CollapseCertificate(y, tuple(schedule), coset_of(a, descents))
    cert.validate()
    return cert


# -- verification reports ------------------------------------------------------

@dataclass
class ChamberReport:
    """Per-element outcome of the chamber-intersection verification."""

    radius: int
    checked: int
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        status = "pass" if self.passed else "FAIL"
        out = [f"chamber intersections at radius {self.radius}: {status} "
               f"({self.checked} chambers)"]
        out += [f"  {msg}" for msg in self.failures]
        return out


def verify_chamber_intersections(graph: DefiningGraph, radius: int) -> ChamberReport:
    """Check the two chamber-gluing facts used by the contractibility argument.

    For every element a of length k = radius: the overlap of its chamber with
    the radius k-1 complex is nonempty and collapses to a point, and the
    overlap agrees with the direct descent-set description; and for distinct
    same-length elements, chamber intersections already lie one stage down.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    failures: list[str] = []
    checked = 0
    prev = build_complex(graph, radius - 1)
    prev_cubes = prev.cubes
    layer = [a for a in elements_of_length_up_to(graph, radius)
             if len(a) == radius]
    chambers = {a: translate_domain(a) for a in layer}
    for a in layer:
        checked += 1
        y = chamber_boundary(a)
        if not y.cubes:
            failures.append(f"{a!r}: empty chamber boundary")
            continue
        literal = frozenset(c for c in chambers[a].cubes if c in prev_cubes)
        if literal != y.cubes:
            failures.append(f"{a!r}: descent description differs from the "
                            f"literal intersection")
        try:
            retraction_certificate(a)
        except AssertionError as exc:
            failures.append(f"{a!r}: {exc}")
    for a, b in combinations(layer, 2):
        overlap = chambers[a].cubes & chambers[b].cubes
        if not overlap <= prev_cubes:
            failures.append(f"{a!r} and {b!r}: chamber overlap escapes the "
                            f"previous stage")
    return ChamberReport(radius, checked, failures)


# -- homology -------------------------------------------------------------------

def boundary_matrices(x: CubeComplex) -> tuple[list[int], list[list[list[int]]]]:
    """Cell counts and boundary matrices of the cubical chain complex."""
    top = x.dimension()
    cells = [x.cubes_of_dim(d) for d in range(top + 1)]
    dims = [len(layer) for layer in cells]
    index = [{c: i for i, c in enumerate(layer)} for layer in cells]
    mats: list[list[list[int]]] = [[]]
    order = x.graph.generators
    for d in range(1, top + 1):
        rows = [[0] * dims[d] for _ in range(dims[d - 1])]
        for j, c in enumerate(cells[d]):
            for sign, f in c.facets(order):
                rows[index[d - 1][f]][j] += sign
        mats.append(rows)
    return dims, mats


def homology(x: CubeComplex) -> list[tuple[int, tuple[int, ...]]]:
    """Integer homology, one (free rank, torsion) pair per dimension."""
    if not x.cubes:
        return []
    dims, mats = boundary_matrices(x)
    return homology_from_boundaries(dims, mats)


def reduced_homology(x: CubeComplex) -> list[tuple[int, tuple[int, ...]]]:
    """Reduced integer homology; the complex must be nonempty."""
    if not x.cubes:
        raise ValueError("reduced homology of the empty complex")
    out = homology(x)
    free0, tor0 = out[0]
    out[0] = (free0 - 1, tor0)
    return out


def is_acyclic(x: CubeComplex) -> bool:
    return all(free == 0 and not tor for free, tor in reduced_homology(x))
