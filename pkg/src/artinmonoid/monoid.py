"""Positive-word arithmetic in an Artin monoid.

Elements are equivalence classes of positive words under the alternating
braid relations.  The canonical representative of a class is its
lexicographically least word with respect to the declared generator order.
All class-level operations (equality, divisibility, gcd, bounded lcm) work by
materializing the finite rewrite closure of a word, so they carry a hard
length cap; the default of 12 letters keeps closures at desk scale and can be
raised via ARTINMONOID_MAX_WORD_LEN or ``set_max_word_length``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .defining_graph import (
    DefiningGraph,
    GraphError,
    is_finite_type,
    reflection_count,
    spherical_subsets,
)

Word = tuple[str, ...]

_max_word_len = int(os.environ.get("ARTINMONOID_MAX_WORD_LEN", "12"))


class WordLengthError(RuntimeError):
    """A class-based operation was asked to expand a word beyond the cap."""


def set_max_word_length(n: int) -> None:
    global _max_word_len
    if n < 1:
        raise ValueError("cap must be positive")
    _max_word_len = n


def get_max_word_length() -> int:
    return _max_word_len


def _check_word(graph: DefiningGraph, word: Sequence[str]) -> Word:
    w = tuple(word)
    for g in w:
        if g not in graph.generators:
            raise GraphError(f"unknown generator {g!r}")
    return w


@lru_cache(maxsize=None)
def _relations(graph: DefiningGraph) -> tuple[tuple[Word, Word], ...]:
    """Both oriented forms of each defining relation, as substring rewrites."""
    rels = []
    for a, b, m in graph.edges:
        left = tuple((a, b)[i % 2] for i in range(m))
        right = tuple((b, a)[i % 2] for i in range(m))
        rels.append((left, right))
        rels.append((right, left))
    return tuple(rels)


@lru_cache(maxsize=None)
def _closure(graph: DefiningGraph, word: Word) -> frozenset[Word]:
    """All words reachable from ``word`` by single relation replacements."""
    if len(word) > _max_word_len:
        raise WordLengthError(
            f"word of length {len(word)} exceeds the cap {_max_word_len}; "
            "raise ARTINMONOID_MAX_WORD_LEN if this is intended")
    rels = _relations(graph)
    seen = {word}
    frontier = [word]
    while frontier:
        nxt = []
        for w in frontier:
            for old, new in rels:
                k = len(old)
                for i in range(len(w) - k + 1):
                    if w[i:i + k] == old:
                        v = w[:i] + new + w[i + k:]
                        if v not in seen:
                            seen.add(v)
                            nxt.append(v)
        frontier = nxt
    return frozenset(seen)


def equivalence_class(graph: DefiningGraph, word: Sequence[str]) -> frozenset[Word]:
    """The full braid-equivalence class of a positive word."""
    return _closure(graph, _check_word(graph, word))


def canonical_word(graph: DefiningGraph, word: Sequence[str]) -> Word:
    w = _check_word(graph, word)
    cls = _closure(graph, w)
    return min(cls, key=graph.word_key)


@dataclass(frozen=True)
class MonoidElement:
    """A monoid element, held by its canonical (lex-least) word."""

    graph: DefiningGraph
    word: Word

    def __post_init__(self) -> None:
        # Trust the factory functions; catch accidental direct misuse cheaply.
        for g in self.word:
            if g not in self.graph.generators:
                raise GraphError(f"unknown generator {g!r}")

    def __len__(self) -> int:
        return len(self.word)

    def __mul__(self, other: "MonoidElement") -> "MonoidElement":
        if self.graph != other.graph:
            raise GraphError("elements live over different defining graphs")
        return element(self.graph, self.word + other.word)

    def __repr__(self) -> str:
        return f"<{'.'.join(self.word) or 'e'}>"

    @property
    def support(self) -> frozenset[str]:
        """Letters occurring in any word of the class (a class invariant)."""
        return frozenset(self.word)

    def str_word(self) -> str:
        return " ".join(self.word)


def element(graph: DefiningGraph, word: Sequence[str] | str) -> MonoidElement:
    """Canonicalize a word (space-separated names or a sequence) to an element."""
    if isinstance(word, str):
        word = tuple(word.split())
    return MonoidElement(graph, canonical_word(graph, word))


def _trusted_element(graph: DefiningGraph, word: Word) -> MonoidElement:
    """Wrap a word already known to be canonical (internal fast path)."""
    return MonoidElement(graph, word)


def identity(graph: DefiningGraph) -> MonoidElement:
    return MonoidElement(graph, ())


def generator(graph: DefiningGraph, name: str) -> MonoidElement:
    return element(graph, (name,))


def length(a: MonoidElement) -> int:
    return len(a.word)


def equals(a: MonoidElement, b: MonoidElement) -> bool:
    if a.graph != b.graph:
        raise GraphError("elements live over different defining graphs")
    return a.word == b.word


def multiply(a: MonoidElement, b: MonoidElement) -> MonoidElement:
    return a * b


# -- divisibility ------------------------------------------------------------

@lru_cache(maxsize=None)
def _left_divisor_words(graph: DefiningGraph, word: Word) -> frozenset[Word]:
    """Canonical words of all left divisors (prefixes across the class)."""
    out = set()
    for w in _closure(graph, word):
        for k in range(len(w) + 1):
            out.add(canonical_word(graph, w[:k]))
    return frozenset(out)


@lru_cache(maxsize=None)
def _right_divisor_words(graph: DefiningGraph, word: Word) -> frozenset[Word]:
    out = set()
    for w in _closure(graph, word):
        for k in range(len(w) + 1):
            out.add(canonical_word(graph, w[k:]))
    return frozenset(out)


def left_divisors(a: MonoidElement) -> frozenset[MonoidElement]:
    return frozenset(_trusted_element(a.graph, w)
                     for w in _left_divisor_words(a.graph, a.word))


def right_divisors(a: MonoidElement) -> frozenset[MonoidElement]:
    return frozenset(_trusted_element(a.graph, w)
                     for w in _right_divisor_words(a.graph, a.word))


def left_divides(a: MonoidElement, b: MonoidElement) -> bool:
    """Whether b = a c for some positive c."""
    if a.graph != b.graph:
        raise GraphError("elements live over different defining graphs")
    return a.word in _left_divisor_words(b.graph, b.word)


def right_divides(a: MonoidElement, b: MonoidElement) -> bool:
    """Whether b = c a for some positive c."""
    if a.graph != b.graph:
        raise GraphError("elements live over different defining graphs")
    return a.word in _right_divisor_words(b.graph, b.word)


def left_quotient(a: MonoidElement, b: MonoidElement) -> MonoidElement:
    """The c with b = a c; requires a to left-divide b."""
    for w in _closure(b.graph, b.word):
        if canonical_word(b.graph, w[:len(a)]) == a.word:
            return element(b.graph, w[len(a):])
    raise ValueError(f"{a!r} does not left-divide {b!r}")


def right_quotient(a: MonoidElement, b: MonoidElement) -> MonoidElement:
    """The c with b = c a; requires a to right-divide b."""
    k = len(b) - len(a)
    for w in _closure(b.graph, b.word):
        if canonical_word(b.graph, w[k:]) == a.word:
            return element(b.graph, w[:k])
    raise ValueError(f"{a!r} does not right-divide {b!r}")


# -- lattice operations ------------------------------------------------------

def _common_max(graph: DefiningGraph, words: set[Word],
                divides_fn) -> MonoidElement:
    best_len = max(len(w) for w in words)
    top = [w for w in words if len(w) == best_len]
    if len(top) != 1:
        raise AssertionError(f"no unique maximal element among {sorted(top)}")
    best = _trusted_element(graph, top[0])
    for w in words:
        if not divides_fn(_trusted_element(graph, w), best):
            raise AssertionError(
                f"common divisor {w} does not divide the gcd candidate {top[0]}")
    return best


def gcd_left(elements: Iterable[MonoidElement]) -> MonoidElement:
    """Greatest common left divisor of a nonempty collection."""
    elems = list(elements)
    if not elems:
        raise ValueError("gcd of an empty collection")
    graph = elems[0].graph
    common = set(_left_divisor_words(graph, elems[0].word))
    for x in elems[1:]:
        if x.graph != graph:
            raise GraphError("elements live over different defining graphs")
        common &= _left_divisor_words(graph, x.word)
    return _common_max(graph, common, left_divides)


def gcd_right(elements: Iterable[MonoidElement]) -> MonoidElement:
    elems = list(elements)
    if not elems:
        raise ValueError("gcd of an empty collection")
    graph = elems[0].graph
    common = set(_right_divisor_words(graph, elems[0].word))
    for x in elems[1:]:
        if x.graph != graph:
            raise GraphError("elements live over different defining graphs")
        common &= _right_divisor_words(graph, x.word)
    return _common_max(graph, common, right_divides)


def _bounded_lcm(elements: list[MonoidElement], bound: int,
                 divides_fn, extend_right: bool) -> Optional[MonoidElement]:
    """Breadth-first search for the least common multiple within ``bound``.

    Extends the longest input one generator at a time; the first common
    multiple found has minimal length and is the lcm when one exists
    (least common multiples are unique whenever any common multiple is).
    """
    graph = elements[0].graph
    start = max(elements, key=len)
    if any(x.graph != graph for x in elements):
        raise GraphError("elements live over different defining graphs")
    if bound < len(start):
        raise ValueError(f"bound {bound} is below the longest input {len(start)}")
    frontier = {start.word}
    seen = {start.word}
    while True:
        for w in sorted(frontier):
            cand = _trusted_element(graph, w)
            if all(divides_fn(x, cand) for x in elements):
                return cand
        if not frontier or len(next(iter(frontier))) >= bound:
            return None
        nxt = set()
        for w in frontier:
            for g in graph.generators:
                v = canonical_word(graph, w + (g,) if extend_right else (g,) + w)
                if v not in seen:
                    seen.add(v)
                    nxt.add(v)
        frontier = nxt


def lcm_left(elements: Iterable[MonoidElement], bound: int) -> Optional[MonoidElement]:
    """Least common left multiple within ``bound``, or None if none found.

    A left multiple of x is x c, so candidates grow on the right.
    """
    elems = list(elements)
    if not elems:
        raise ValueError("lcm of an empty collection")
    return _bounded_lcm(elems, bound, left_divides, extend_right=True)


def lcm_right(elements: Iterable[MonoidElement], bound: int) -> Optional[MonoidElement]:
    elems = list(elements)
    if not elems:
        raise ValueError("lcm of an empty collection")
    return _bounded_lcm(elems, bound, right_divides, extend_right=False)


def guaranteed_lcm_bound(graph: DefiningGraph, subset: Iterable[str],
                         max_len: int) -> int:
    """A length bound under which lcms inside a finite-type submonoid exist.

    Every element of length k left-divides the k-th power of the Garside
    element of its finite-type support, so the lcm of elements of length at
    most ``max_len`` appears within reflection_count * max_len letters.
    """
    return max(1, reflection_count(graph, subset) * max_len)


# -- Garside elements and minimal elements ------------------------------------

@lru_cache(maxsize=None)
def _garside_cached(graph: DefiningGraph, subset: frozenset[str]) -> MonoidElement:
    if not is_finite_type(graph, subset):
        raise GraphError(f"subset {sorted(subset)} is not finite type")
    if not subset:
        return identity(graph)
    gens = [generator(graph, g) for g in sorted(subset, key=graph.index)]
    target = reflection_count(graph, subset)
    left = lcm_left(gens, bound=target)
    right = lcm_right(gens, bound=target)
    if left is None or right is None or left != right:
        raise AssertionError(
            f"Garside element of {sorted(subset)} failed the lcm cross-check")
    if len(left) != target:
        raise AssertionError(
            f"Garside element of {sorted(subset)} has length {len(left)}, "
            f"expected {target}")
    return left


def garside_element(graph: DefiningGraph, subset: Iterable[str]) -> MonoidElement:
    """The two-sided lcm of a finite-type subset of the generators."""
    return _garside_cached(graph, frozenset(subset))


@lru_cache(maxsize=None)
def _minimal_cached(graph: DefiningGraph) -> frozenset[MonoidElement]:
    out: set[MonoidElement] = set()
    for t in spherical_subsets(graph).maximal:
        out |= left_divisors(garside_element(graph, t))
    out.discard(identity(graph))
    return frozenset(out)


def minimal_elements(graph: DefiningGraph) -> frozenset[MonoidElement]:
    """Nontrivial divisors of the Garside elements of finite-type subsets.

    Divisors of a Garside element of a smaller spherical subset divide the
    one of any larger subset, so scanning maximal subsets is exhaustive.
    """
    return _minimal_cached(graph)


def is_minimal(a: MonoidElement) -> bool:
    if len(a) == 0:
        return False
    sup = a.support
    if not is_finite_type(a.graph, sup):
        return False
    return left_divides(a, garside_element(a.graph, sup))


def right_descents(a: MonoidElement) -> frozenset[str]:
    """Generators that right-divide the element.

    The result always spans a finite-type subset; that fact is asserted
    because the downstream complex construction relies on it.
    """
    out = frozenset(g for g in a.graph.generators
                    if (g,) in _right_divisor_words(a.graph, a.word))
    if not is_finite_type(a.graph, out):
        raise AssertionError(
            f"right-descent set {sorted(out)} of {a!r} is not finite type")
    return out


def right_greedy_normal_form(a: MonoidElement,
                             subset: Iterable[str] | None = None) -> tuple[MonoidElement, ...]:
    """Factor a into minimal elements, peeling maximal factors off the right.

    The last factor is gcd_right(a, Delta_T) for the finite-type support T,
    and recursively for the remaining prefix.  Factors multiply back to a.
    """
    sub = frozenset(subset) if subset is not None else a.support
    if not a.support <= sub:
        raise GraphError(f"element {a!r} uses letters outside {sorted(sub)}")
    if not is_finite_type(a.graph, sub):
        raise GraphError(f"subset {sorted(sub)} is not finite type")
    delta = garside_element(a.graph, sub)
    factors: list[MonoidElement] = []
    cur = a
    while len(cur) > 0:
        tail = gcd_right([cur, delta])
        if len(tail) == 0:
            raise AssertionError(f"greedy factor of nontrivial {cur!r} is trivial")
        factors.append(tail)
        cur = right_quotient(tail, cur)
    return tuple(reversed(factors))
