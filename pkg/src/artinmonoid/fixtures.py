"""Canonical test graphs used across the test-suite and docs.

The four-generator graph mirrors the standard fan-plus-tail shape: labels
(m_rs, m_rt, m_st, m_tu) = (3, 2, 3, 3) with the r-u and s-u pairs unlabelled
(infinity), so the maximal finite-type subsets are {r,s,t} and {t,u}.  The
label choice is a repository convention.
"""

from .defining_graph import DefiningGraph, parse_graph


def edge_graph(m: int = 3) -> DefiningGraph:
    """Two generators joined by a single edge labelled m."""
    return parse_graph(f"gens s t\nedge s t {m}\n")


def discrete_graph(*names: str) -> DefiningGraph:
    """Generators with no relations at all."""
    return parse_graph("gens " + " ".join(names or ("s", "t")) + "\n")


FAN_TAIL_TEXT = """\
gens r s t u
edge r s 3
edge r t 2
edge s t 3
edge t u 3
"""


def fan_tail_graph() -> DefiningGraph:
    return parse_graph(FAN_TAIL_TEXT)


def triangle_graph(m_rs: int = 3, m_rt: int = 3, m_st: int = 3) -> DefiningGraph:
    return parse_graph(
        f"gens r s t\nedge r s {m_rs}\nedge r t {m_rt}\nedge s t {m_st}\n"
    )


NONCONVEXITY_TEXT = """\
gens s t u
edge s t 3
edge s u 2
edge t u 2
"""


def nonconvexity_graph() -> DefiningGraph:
    """Three generators with m_st = 3 and u commuting with both.

    Finite type (the Coxeter group is S_3 x S_2); the graph on which the
    monoid Cayley subgraph fails to be quasi-convex.
    """
    return parse_graph(NONCONVEXITY_TEXT)
