"""Finite-type Artin group arithmetic and Cayley-graph geodesy.

Group elements are reduced left fractions a^-1 b of monoid elements with
trivial common left divisor; reduced fractions are unique, which makes them
usable as dedup keys in breadth-first searches.  The generating set of
interest is the set of minimal elements (divisors of the Garside elements of
spherical subsets), under which positive elements sit at distance equal to
their canonical length.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .defining_graph import DefiningGraph, GraphError, is_finite_type
from .garside import NF, GarsideTable, garside_table
from .monoid import MonoidElement, minimal_elements

Frac = tuple[NF, NF]  # (negative part, positive part), both normal forms


@dataclass(frozen=True)
class GroupElementFT:
    """A group element of a finite-type Artin group, as a reduced fraction."""

    neg: MonoidElement
    pos: MonoidElement

    def __post_init__(self) -> None:
        if self.neg.graph != self.pos.graph:
            raise GraphError("fraction parts live over different graphs")

    @property
    def graph(self) -> DefiningGraph:
        return self.neg.graph

    def is_positive(self) -> bool:
        return len(self.neg) == 0

    def __repr__(self) -> str:
        n = ".".join(self.neg.word) or "e"
        p = ".".join(self.pos.word) or "e"
        return f"({n})^-1.({p})" if len(self.neg) else f"({p})"

    def key(self):
        return (self.neg.word, self.pos.word)


class FractionCalc:
    """Fraction arithmetic over one Garside table."""

    def __init__(self, graph: DefiningGraph):
        if not is_finite_type(graph, graph.generators):
            raise GraphError("fraction arithmetic requires a finite-type graph")
        self.graph = graph
        self.table = garside_table(graph)

    # -- conversions ----------------------------------------------------------

    def frac(self, x: GroupElementFT) -> Frac:
        t = self.table
        return (t.nf_of_element(x.neg), t.nf_of_element(x.pos))

    def unfrac(self, f: Frac) -> GroupElementFT:
        t = self.table
        return GroupElementFT(t.to_element(f[0]), t.to_element(f[1]))

    def from_parts(self, neg: MonoidElement, pos: MonoidElement) -> Frac:
        t = self.table
        return self.reduce(t.nf_of_element(neg), t.nf_of_element(pos))

    # -- arithmetic -------------------------------------------------------------

    def reduce(self, neg: NF, pos: NF) -> Frac:
        t = self.table
        g = t.gcd_left(neg, pos)
        if not g:
            return (neg, pos)
        return (t.lquot_elem(g, neg), t.lquot_elem(g, pos))

    identity_frac: Frac = ((), ())

    def mult_pos(self, f: Frac, m: NF) -> Frac:
        """f * m for a positive m."""
        t = self.table
        return self.reduce(f[0], t.mult(f[1], m))

    def mult_inv(self, f: Frac, m: NF) -> Frac:
        """f * m^-1 for a positive m, clearing pos * m^-1 through a right lcm."""
        t = self.table
        z = t.lcm_right(f[1], m)
        u = t.rquot_elem(f[1], z)
        v = t.rquot_elem(m, z)
        return self.reduce(t.mult(u, f[0]), v)

    def mult(self, f: Frac, g: Frac) -> Frac:
        """Fraction product: clear the inner pos * neg^-1 with one right lcm.

        f * g = fn^-1 (fp gn^-1) gp and fp gn^-1 = u^-1 z for the right lcm
        u fp = z gn, so the product is (u fn)^-1 (z gp), reduced.
        """
        t = self.table
        if not g[0]:
            return self.reduce(f[0], t.mult(f[1], g[1]))
        w = t.lcm_right(f[1], g[0])
        u = t.rquot_elem(f[1], w)
        z = t.rquot_elem(g[0], w)
        return self.reduce(t.mult(u, f[0]), t.mult(z, g[1]))

    def inverse(self, f: Frac) -> Frac:
        return (f[1], f[0])

    def is_positive(self, f: Frac) -> bool:
        return not f[0]

    def support(self, f: Frac) -> frozenset[str]:
        t = self.table
        return frozenset(t.plain_word(f[0])) | frozenset(t.plain_word(f[1]))

    def canonical_length(self, f: Frac) -> int:
        """Factor count of the geodesic normal form."""
        return len(f[0]) + len(f[1])

    def garside_form(self, f: Frac) -> tuple[NF, int]:
        """Write the element as m * Delta^k with m positive, m not right
        divisible by Delta."""
        t = self.table
        n = len(f[0])
        u = t.rquot_elem(f[0], t.delta_pow(n)) if n else ()
        m = t.tau(t.mult(u, f[1]), n)
        k = -n
        while t.right_divisible_by_delta(m):
            m = t.rquot_elem((t.delta_idx,), m)
            k += 1
        return m, k


def reduce_fraction(a: MonoidElement, b: MonoidElement) -> GroupElementFT:
    """Cancel the common left divisor of a and b, giving the element a^-1 b."""
    calc = _calc(a.graph)
    return calc.unfrac(calc.from_parts(a, b))


def positive_element(a: MonoidElement) -> GroupElementFT:
    from .monoid import identity
    return GroupElementFT(identity(a.graph), a)


def group_identity(graph: DefiningGraph) -> GroupElementFT:
    from .monoid import identity
    return GroupElementFT(identity(graph), identity(graph))


def group_multiply(x: GroupElementFT, y: GroupElementFT) -> GroupElementFT:
    if x.graph != y.graph:
        raise GraphError("elements live over different defining graphs")
    calc = _calc(x.graph)
    return calc.unfrac(calc.mult(calc.frac(x), calc.frac(y)))


def group_inverse(x: GroupElementFT) -> GroupElementFT:
    return GroupElementFT(x.pos, x.neg)


def garside_form(x: GroupElementFT) -> tuple[MonoidElement, int]:
    """The unique decomposition m * Delta^k with Delta not a right divisor of m."""
    calc = _calc(x.graph)
    m, k = calc.garside_form(calc.frac(x))
    return calc.table.to_element(m), k


@lru_cache(maxsize=None)
def _calc(graph: DefiningGraph) -> FractionCalc:
    return FractionCalc(graph)


# -- generating sets and balls ---------------------------------------------------

def _generating_nfs(calc: FractionCalc, gens: str) -> list[NF]:
    t = calc.table
    if gens == "S":
        out = [(t.letter[g],) for g in calc.graph.generators]
    elif gens == "M":
        ms = sorted(minimal_elements(calc.graph), key=lambda m: (len(m), m.word))
        out = [t.nf_of_element(m) for m in ms]
    else:
        raise ValueError("generating set must be 'S' or 'M'")
    return out


def _neighbors(calc: FractionCalc, gens_nf: list[NF], f: Frac) -> Iterator[tuple[NF, int, Frac]]:
    for m in gens_nf:
        yield m, +1, calc.mult_pos(f, m)
        yield m, -1, calc.mult_inv(f, m)


def _ball(calc: FractionCalc, gens_nf: list[NF], center: Frac,
          radius: int) -> dict[Frac, int]:
    dist = {center: 0}
    frontier = [center]
    for d in range(1, radius + 1):
        nxt = []
        for f in frontier:
            for _, _, g in _neighbors(calc, gens_nf, f):
                if g not in dist:
                    dist[g] = d
                    nxt.append(g)
        frontier = nxt
    return dist


@dataclass(frozen=True)
class CayleyBall:
    """A radius ball in the Cayley graph over the chosen generating set."""

    graph: DefiningGraph
    gens: str
    center: GroupElementFT
    radius: int
    vertices: frozenset[GroupElementFT]
    edges: frozenset[tuple[GroupElementFT, MonoidElement, GroupElementFT]]
    distances: dict[GroupElementFT, int] = field(compare=False, hash=False)

    def sphere(self, d: int) -> list[GroupElementFT]:
        return sorted((v for v, k in self.distances.items() if k == d),
                      key=GroupElementFT.key)


def cayley_ball(graph: DefiningGraph, gens: str, radius: int,
                center: Optional[GroupElementFT] = None) -> CayleyBall:
    """Breadth-first ball, vertices deduplicated by reduced fraction."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    calc = _calc(graph)
    gens_nf = _generating_nfs(calc, gens)
    c = calc.frac(center) if center is not None else calc.identity_frac
    dist = _ball(calc, gens_nf, c, radius)
    verts = {f: calc.unfrac(f) for f in dist}
    edges = set()
    for f in dist:
        for m, sign, g in _neighbors(calc, gens_nf, f):
            if sign > 0 and g in dist:
                edges.add((verts[f], calc.table.to_element(m), verts[g]))
    return CayleyBall(graph, gens, verts[c], radius,
                      frozenset(verts.values()), frozenset(edges),
                      {verts[f]: d for f, d in dist.items()})


def monoid_ball(ball: CayleyBall) -> CayleyBall:
    """The full subgraph of a ball on its positive vertices."""
    keep = frozenset(v for v in ball.vertices if v.is_positive())
    edges = frozenset((a, m, b) for a, m, b in ball.edges
                      if a in keep and b in keep)
    dists = {v: d for v, d in ball.distances.items() if v in keep}
    return CayleyBall(ball.graph, ball.gens, ball.center, ball.radius,
                      keep, edges, dists)


def distance(x: GroupElementFT, y: GroupElementFT, gens: str = "M",
             cap: int = 8) -> Optional[int]:
    """Word-metric distance by breadth-first search, or None past the cap."""
    if x.graph != y.graph:
        raise GraphError("elements live over different defining graphs")
    calc = _calc(x.graph)
    gens_nf = _generating_nfs(calc, gens)
    start, goal = calc.frac(x), calc.frac(y)
    if start == goal:
        return 0
    dist = {start: 0}
    frontier = [start]
    for d in range(1, cap + 1):
        nxt = []
        for f in frontier:
            for _, _, g in _neighbors(calc, gens_nf, f):
                if g == goal:
                    return d
                if g not in dist:
                    dist[g] = d
                    nxt.append(g)
        frontier = nxt
    return None


# -- geodesic normal form ----------------------------------------------------------

def geodesic_normal_form(x: GroupElementFT) -> tuple[tuple[MonoidElement, int], ...]:
    """A geodesic word over the minimal elements and their inverses.

    Reversed right-greedy factors of the negative part as inverses, then the
    right-greedy factors of the positive part.  The factor count equals the
    breadth-first distance from the identity; the test-suite certifies that
    at desk scale.
    """
    calc = _calc(x.graph)
    t = calc.table
    f = calc.frac(x)
    out = [(t.to_element(nf), -1)
           for nf in reversed(t.right_greedy_factors(f[0]))]
    out += [(t.to_element(nf), +1) for nf in t.right_greedy_factors(f[1])]
    return tuple(out)


def evaluate_word(graph: DefiningGraph,
                  word: Iterable[tuple[MonoidElement, int]]) -> GroupElementFT:
    calc = _calc(graph)
    cur = calc.identity_frac
    for m, sign in word:
        nf = calc.table.nf_of_element(m)
        cur = calc.mult_pos(cur, nf) if sign > 0 else calc.mult_inv(cur, nf)
    return calc.unfrac(cur)


# -- isometric-embedding verification ------------------------------------------------

@dataclass
class IsometryReport:
    radius: int
    pair_count: int
    gnf_checked: int
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        status = "pass" if self.passed else "FAIL"
        out = [f"monoid isometric embedding at radius {self.radius}: {status} "
               f"({self.pair_count} pairs, {self.gnf_checked} ball elements)"]
        out += [f"  {m}" for m in self.failures]
        return out


def _monoid_graph(calc: FractionCalc, gens_nf: list[NF],
                  sources: list[Frac], depth: int) -> dict[Frac, dict[Frac, int]]:
    """Exact distances in the monoid subgraph from each source.

    First discovers every positive vertex within ``depth`` subgraph steps of
    a source (neighbors are m-multiples both ways, kept when positive), then
    runs one bounded search per source on the discovered graph.
    """
    t = calc.table

    def pos_neighbors(f: Frac) -> list[Frac]:
        out = []
        for m in gens_nf:
            out.append((f[0], t.mult(f[1], m)))
            if t.divides_left(t.rev(m), t.rev(f[1])):
                out.append((f[0], t.rquot_elem(m, f[1])))
        return out

    seen = set(sources)
    frontier = list(sources)
    adjacency: dict[Frac, list[Frac]] = {}
    for _ in range(depth):
        nxt = []
        for f in frontier:
            nbrs = adjacency.setdefault(f, pos_neighbors(f))
            for g in nbrs:
                if g not in seen:
                    seen.add(g)
                    nxt.append(g)
        frontier = nxt
    for f in list(seen - adjacency.keys()):
        adjacency[f] = pos_neighbors(f)

    out: dict[Frac, dict[Frac, int]] = {}
    for src in sources:
        dist = {src: 0}
        queue = deque([(src, 0)])
        while queue:
            f, d = queue.popleft()
            if d == depth:
                continue
            for g in adjacency.get(f, ()):
                if g in adjacency and g not in dist:
                    dist[g] = d + 1
                    queue.append((g, d + 1))
        out[src] = dist
    return out


def verify_monoid_isometry(graph: DefiningGraph, radius: int) -> IsometryReport:
    """Check that monoid and group distances agree on monoid pairs.

    For every pair of positive elements within ``radius`` of the identity in
    the monoid subgraph: the distance inside the subgraph, the distance in
    the whole group, and the length of the witness path through the common
    left divisor must all agree.  Group distances beyond the precomputed ball
    are certified by the two-sided sphere scan.
    """
    calc = _calc(graph)
    t = calc.table
    gens_nf = _generating_nfs(calc, "M")
    ball = _ball(calc, gens_nf, calc.identity_frac, radius)
    failures: list[str] = []

    gnf_checked = 0
    for f, d in ball.items():
        gnf_checked += 1
        if calc.canonical_length(f) != d:
            failures.append(f"{calc.unfrac(f)!r}: normal form length "
                            f"{calc.canonical_length(f)} but distance {d}")

    sources = sorted((f for f in ball if calc.is_positive(f)),
                     key=lambda f: (ball[f], f))
    plus = _monoid_graph(calc, gens_nf, sources, 2 * radius)

    low_spheres = [f for f, d in ball.items() if 1 <= d <= radius - 1]
    pair_count = 0
    for a in sources:
        for b in sources:
            if b < a:
                continue
            pair_count += 1
            d_plus = plus[a].get(b)
            g = calc.mult(calc.inverse(a), b)
            expect = calc.canonical_length(g)
            if d_plus != expect:
                failures.append(f"pair {calc.unfrac(a)!r},{calc.unfrac(b)!r}: "
                                f"monoid distance {d_plus}, normal form {expect}")
                continue
            d_group = _certified_group_distance(calc, ball, low_spheres, g,
                                                expect, radius)
            if d_group != expect:
                failures.append(f"pair {calc.unfrac(a)!r},{calc.unfrac(b)!r}: "
                                f"group distance {d_group} != monoid {expect}")
            if not _witness_path_ok(calc, a, b):
                failures.append(f"pair {calc.unfrac(a)!r},{calc.unfrac(b)!r}: "
                                f"witness path does not validate")
    return IsometryReport(radius, pair_count, gnf_checked, failures)


def _certified_group_distance(calc: FractionCalc, ball: dict[Frac, int],
                              low_spheres: list[Frac], g: Frac,
                              claim: int, radius: int) -> Optional[int]:
    """Exact distance from the identity to g, assuming it is at most 2*radius.

    Inside the ball the answer is stored.  Outside, any path of length
    d <= 2*radius - 1 splits at a vertex v with d(e,v) <= radius - 1 and
    d(v,g) <= radius, so scanning the low spheres certifies d >= claim;
    the claimed geodesic witness provides d <= claim.
    """
    if g in ball:
        return ball[g]
    best = claim
    for v in low_spheres:
        w = calc.mult(calc.inverse(v), g)
        dw = ball.get(w)
        if dw is not None:
            best = min(best, ball[v] + dw)
    return best


def _witness_path_ok(calc: FractionCalc, a: Frac, b: Frac) -> bool:
    """Validate the geodesic through the common left divisor stays positive."""
    t = calc.table
    c = t.gcd_left(a[1], b[1])
    a1 = t.lquot_elem(c, a[1])
    b1 = t.lquot_elem(c, b[1])
    path = [(m, -1) for m in reversed(t.right_greedy_factors(a1))]
    path += [(m, +1) for m in t.right_greedy_factors(b1)]
    cur = (a[0], a[1])
    for m, sign in path:
        cur = calc.mult_pos(cur, m) if sign > 0 else calc.mult_inv(cur, m)
        if not calc.is_positive(cur):
            return False
    # the path length must match the normal-form length of a^-1 b
    return cur == b and len(path) == len(a1) + len(b1)


# -- the non-quasi-convexity example ------------------------------------------------

@dataclass
class QuasiconvexityReport:
    n: int
    distance_st: int
    gamma_positive_ok: bool
    gamma_prime_ok: bool
    monoid_gap: int
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        status = "pass" if self.passed else "FAIL"
        out = [f"non-quasi-convexity witness n={self.n}: {status} "
               f"(d(s^n,t^n)={self.distance_st}, monoid gap {self.monoid_gap})"]
        out += [f"  {m}" for m in self.failures]
        return out


def quasiconvexity_example(n: int, cap: Optional[int] = None) -> QuasiconvexityReport:
    """Certify the geodesic that strays n steps away from the monoid.

    On the graph with m_st = 3 and u commuting with s and t: the distance
    between s^n and t^n over the minimal elements is 2n, realized both by the
    positive path through the identity and by the path through u^-n; and the
    nearest positive vertex to u^-n is exactly n away.
    """
    from .fixtures import nonconvexity_graph
    if n < 1:
        raise ValueError("n must be at least 1")
    if cap is None:
        cap = 2 * n + 2
    if cap < 2 * n:
        raise ValueError(f"cap {cap} cannot certify distances up to {2 * n}")
    graph = nonconvexity_graph()
    calc = _calc(graph)
    t = calc.table
    gens_nf = _generating_nfs(calc, "M")
    failures: list[str] = []

    s, tt, u = (t.letter[g] for g in ("s", "t", "u"))
    sn: Frac = ((), t.normalize([s] * n))
    tn: Frac = ((), t.normalize([tt] * n))

    # positive path gamma: s^n down to e, then up to t^n
    gamma_ok = True
    cur = sn
    for _ in range(n):
        cur = calc.mult_inv(cur, (s,))
        gamma_ok &= calc.is_positive(cur)
    gamma_ok &= cur == calc.identity_frac
    for _ in range(n):
        cur = calc.mult_pos(cur, (tt,))
        gamma_ok &= calc.is_positive(cur)
    gamma_ok &= cur == tn
    if not gamma_ok:
        failures.append("positive path from s^n to t^n does not validate")

    # path gamma': down the su edges to u^-n, up the tu edges to t^n
    su = t.nf_of_word(("s", "u"))
    tu = t.nf_of_word(("t", "u"))
    gamma_prime_ok = True
    cur = sn
    for k in range(1, n + 1):
        cur = calc.mult_inv(cur, su)
        want = calc.reduce(t.normalize([u] * k), t.normalize([s] * (n - k)))
        gamma_prime_ok &= cur == want
    mid = cur
    for k in range(1, n + 1):
        cur = calc.mult_pos(cur, tu)
        want = calc.reduce(t.normalize([u] * (n - k)), t.normalize([tt] * k))
        gamma_prime_ok &= cur == want
    gamma_prime_ok &= cur == tn
    if not gamma_prime_ok:
        failures.append("path through u^-n does not validate")

    # distance between the endpoints: upper bound 2n from either path,
    # lower bound from the two-sided sphere scan
    ball = _ball(calc, gens_nf, calc.identity_frac, n)
    low = [f for f, d in ball.items() if 1 <= d <= n - 1]
    g = calc.mult(calc.inverse(sn), tn)
    d_st = _certified_group_distance(calc, ball, low, g, 2 * n, n)
    if d_st != 2 * n:
        failures.append(f"d(s^n, t^n) = {d_st}, expected {2 * n}")

    # distance from u^-n to the monoid subgraph
    gap = None
    dist = {mid: 0}
    frontier = [mid]
    for d in range(1, min(n, cap) + 1):
        nxt = []
        for f in frontier:
            for _, _, h in _neighbors(calc, gens_nf, f):
                if h not in dist:
                    dist[h] = d
                    nxt.append(h)
                    if calc.is_positive(h) and gap is None:
                        gap = d
        if gap is not None:
            break
        frontier = nxt
    if any(calc.is_positive(f) for f in dist if dist[f] < (gap or n)):
        failures.append("positive vertex closer to u^-n than expected")
    if gap != n:
        failures.append(f"distance from u^-n to the monoid is {gap}, expected {n}")

    return QuasiconvexityReport(n, d_st if d_st is not None else -1,
                                gamma_ok, gamma_prime_ok,
                                gap if gap is not None else -1, failures)
