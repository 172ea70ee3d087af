"""Table-driven arithmetic for finite-type Artin monoids.

For a finite-type defining graph the divisors of the Garside element (the
"simples") are a finite lattice, and every element has a unique left-greedy
normal form as a tuple of simples.  This module tabulates the simple lattice
once, using the class-based operations from ``monoid`` at desk scale, and
then runs multiplication, quotients, gcds and lcms purely on tables.  The
class-based layer stays authoritative: the test-suite runs both sides on the
same inputs.

Normal forms are tuples of simple indices with no identity factors; the
empty tuple is the identity.  Words reverse to words (the defining relations
are symmetric), so right-handed operations are the reverses of left-handed
ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .defining_graph import DefiningGraph, GraphError, is_finite_type
from .monoid import (
    MonoidElement,
    _trusted_element,
    element,
    garside_element,
    left_divides,
    left_divisors,
    left_quotient,
)

NF = tuple[int, ...]


@dataclass
class GarsideTable:
    """Precomputed simple-lattice tables for one finite-type graph."""

    graph: DefiningGraph
    simples: list[MonoidElement]
    index: dict[MonoidElement, int]
    id_idx: int
    delta_idx: int
    letter: dict[str, int]
    word: list[tuple[str, ...]]       # canonical word per simple
    slen: list[int]
    sdiv: list[list[bool]]            # sdiv[i][j]: simple i left-divides simple j
    lquot: list[list[int]]            # i\j where sdiv[i][j]
    meet: list[list[int]]             # gcd of two simples
    join: list[list[int]]             # lcm of two simples
    norm: list[list[tuple[int, int]]]  # left-greedy form of a simple pair
    rev_simple: list[int]
    tau_simple: list[int]             # conjugation by the Garside element
    rjoin: list[list[int]] = field(default_factory=list)    # lcm under right division
    rquot_s: list[list[int]] = field(default_factory=list)  # j/i when i right-divides j

    # -- construction ---------------------------------------------------------

    @staticmethod
    def build(graph: DefiningGraph) -> "GarsideTable":
        if not is_finite_type(graph, graph.generators):
            raise GraphError("Garside tables require a finite-type graph")
        delta = garside_element(graph, graph.generators)
        simples = sorted(left_divisors(delta), key=lambda x: (len(x), x.word))
        index = {x: i for i, x in enumerate(simples)}
        n = len(simples)
        divisor_words = {x: {d.word for d in left_divisors(x)} for x in simples}
        sdiv = [[simples[i].word in divisor_words[simples[j]] for j in range(n)]
                for i in range(n)]
        lquot = [[-1] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if sdiv[i][j]:
                    q = left_quotient(simples[i], simples[j])
                    lquot[i][j] = index[q]
        meet = [[-1] * n for _ in range(n)]
        join = [[-1] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                below = [k for k in range(n) if sdiv[k][i] and sdiv[k][j]]
                m = max(below, key=lambda k: len(simples[k]))
                if not all(sdiv[k][m] for k in below):
                    raise AssertionError("simple lattice meet failed")
                meet[i][j] = m
                above = [k for k in range(n) if sdiv[i][k] and sdiv[j][k]]
                jn = min(above, key=lambda k: len(simples[k]))
                if not all(sdiv[jn][k] for k in above):
                    raise AssertionError("simple lattice join failed")
                join[i][j] = jn

        table = GarsideTable(
            graph=graph,
            simples=simples,
            index=index,
            id_idx=index[element(graph, ())],
            delta_idx=index[delta],
            letter={g: index[element(graph, (g,))] for g in graph.generators},
            word=[x.word for x in simples],
            slen=[len(x) for x in simples],
            sdiv=sdiv,
            lquot=lquot,
            meet=meet,
            join=join,
            norm=[[(0, 0)] * n for _ in range(n)],
            rev_simple=[index[element(graph, tuple(reversed(x.word)))] for x in simples],
            tau_simple=[-1] * n,
        )

        # Left-greedy head of a product of simples x*y: the largest simple d
        # with d | x*y, decided inside the lattice via d | x*y iff
        # x\(x v d) | y.  Then x*y = h * ((x\h)\y).
        for i in range(n):
            for j in range(n):
                divs = [d for d in range(n)
                        if sdiv[lquot[i][join[i][d]]][j]]
                h = max(divs, key=lambda d: table.slen[d])
                if not all(sdiv[d][h] for d in divs):
                    raise AssertionError("head of a simple pair is not unique")
                v = lquot[i][h]
                tail = lquot[v][j]
                table.norm[i][j] = (h, tail)

        tau_letter: dict[str, str] = {}
        for g in graph.generators:
            # s * Delta = Delta * tau(s); tau permutes the generators.
            prod = element(graph, (g,) + delta.word)
            t = left_quotient(delta, prod)
            if len(t) != 1:
                raise AssertionError("Garside conjugation did not fix the letters")
            tau_letter[g] = t.word[0]
        for i in range(n):
            mapped = tuple(tau_letter[g] for g in table.word[i])
            table.tau_simple[i] = index[element(graph, mapped)]
        return table

    # -- normal forms ----------------------------------------------------------

    def normalize(self, factors: Sequence[int]) -> NF:
        fs = [f for f in factors if f != self.id_idx]
        norm = self.norm
        changed = True
        while changed:
            changed = False
            for i in range(len(fs) - 1):
                a, b = norm[fs[i]][fs[i + 1]]
                if a != fs[i]:
                    fs[i], fs[i + 1] = a, b
                    changed = True
            if changed:
                fs = [f for f in fs if f != self.id_idx]
        return tuple(fs)

    def nf_of_word(self, word: Sequence[str]) -> NF:
        return self.normalize([self.letter[g] for g in word])

    def nf_of_element(self, a: MonoidElement) -> NF:
        return self.nf_of_word(a.word)

    def plain_word(self, nf: NF) -> tuple[str, ...]:
        return tuple(g for f in nf for g in self.word[f])

    def canonical_word(self, nf: NF) -> tuple[str, ...]:
        """Lex-least word, by repeatedly taking the least feasible letter.

        A letter can start a word for the element exactly when it divides the
        left-greedy head, so greedy selection is both safe and minimal.
        """
        out: list[str] = []
        cur = nf
        while cur:
            head = cur[0]
            g = next(g for g in self.graph.generators
                     if self.sdiv[self.letter[g]][head])
            out.append(g)
            cur = self.lquot_nf(self.letter[g], cur)
        return tuple(out)

    def to_element(self, nf: NF) -> MonoidElement:
        return _trusted_element(self.graph, self.canonical_word(nf))

    def nf_len(self, nf: NF) -> int:
        return sum(self.slen[f] for f in nf)

    # -- arithmetic -------------------------------------------------------------

    def mult(self, a: NF, b: NF) -> NF:
        if not a:
            return b
        if not b:
            return a
        return self.normalize(list(a) + list(b))

    def mult_simple(self, a: NF, s: int) -> NF:
        return self.mult(a, (s,)) if s != self.id_idx else a

    def lquot_nf(self, s: int, a: NF) -> NF:
        """s\\a for a simple s dividing a (it must divide the head)."""
        if s == self.id_idx:
            return a
        if not a or not self.sdiv[s][a[0]]:
            raise ValueError("simple does not divide the element")
        rest = self.lquot[s][a[0]]
        return self.normalize([rest] + list(a[1:]))

    def lquot_elem(self, a: NF, b: NF) -> NF:
        """a\\b when a left-divides b."""
        cur = b
        for f in a:
            cur = self.lquot_nf(f, cur)
        return cur

    def divides_left(self, a: NF, b: NF) -> bool:
        cur = b
        for f in a:
            if not cur or not self.sdiv[f][cur[0]]:
                return False
            cur = self.lquot_nf(f, cur)
        return True

    def gcd_left(self, a: NF, b: NF) -> NF:
        """Iterated meet of heads; each round peels the next common simple."""
        out: list[int] = []
        x, y = a, b
        while x and y:
            d = self.meet[x[0]][y[0]]
            if d == self.id_idx:
                break
            out.append(d)
            x = self.lquot_nf(d, x)
            y = self.lquot_nf(d, y)
        return self.normalize(out)

    def rev(self, a: NF) -> NF:
        return self.nf_of_word(tuple(reversed(self.plain_word(a))))

    def gcd_right(self, a: NF, b: NF) -> NF:
        return self.rev(self.gcd_left(self.rev(a), self.rev(b)))

    def rquot_elem(self, a: NF, b: NF) -> NF:
        """b/a when a right-divides b (b = c a)."""
        return self.rev(self.lquot_elem(self.rev(a), self.rev(b)))

    def delta_pow(self, n: int) -> NF:
        return (self.delta_idx,) * n

    def complement(self, a: NF, n: int) -> NF:
        """a\\Delta^n, defined whenever the normal form fits (len(a) <= n)."""
        if len(a) > n:
            raise ValueError("power too small for the complement")
        return self.lquot_elem(a, self.delta_pow(n))

    def lcm_left(self, a: NF, b: NF) -> NF:
        """Join via the anti-isomorphism x -> x\\Delta^n of the divisor lattice."""
        n = max(len(a), len(b))
        if n == 0:
            return ()
        g = self.gcd_right(self.complement(a, n), self.complement(b, n))
        return self.rquot_elem(g, self.delta_pow(n))

    def lcm_right(self, a: NF, b: NF) -> NF:
        return self.rev(self.lcm_left(self.rev(a), self.rev(b)))

    def tau(self, a: NF, power: int = 1) -> NF:
        """Conjugation by the Garside element, Delta^-1 a Delta, iterated."""
        cur = a
        for _ in range(power % self._tau_order()):
            cur = tuple(self.tau_simple[f] for f in cur)
        return cur

    def _tau_order(self) -> int:
        order = 1
        perm = self.tau_simple
        cur = list(range(len(self.simples)))
        while True:
            cur = [perm[i] for i in cur]
            if cur == list(range(len(self.simples))):
                return order
            order += 1
            if order > 2 * len(self.simples):
                raise AssertionError("Garside conjugation order runaway")

    def right_divisible_by_delta(self, a: NF) -> bool:
        r = self.rev(a)
        return bool(r) and r[0] == self.delta_idx

    def right_greedy_factors(self, a: NF) -> tuple[NF, ...]:
        """Right-greedy factorization, each factor a single simple."""
        r = self.rev(a)
        return tuple((self.rev_simple[f],) for f in reversed(r))


@lru_cache(maxsize=None)
def garside_table(graph: DefiningGraph) -> GarsideTable:
    return GarsideTable.build(graph)
