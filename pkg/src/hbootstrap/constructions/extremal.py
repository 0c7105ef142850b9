"""Starting graphs that realise exact running-time formulas."""

from __future__ import annotations

from math import comb

from ..engine import InfectionRule, run_process
from ..graphcore import Graph, GraphInputError, build_graph, complete_graph


def k4_extremal(n: int) -> Graph:
    """K4 minus an edge, then repeatedly a new vertex joined to both ends of
    the edge infected last (the largest one of the final round)."""
    if n < 4:
        raise GraphInputError("k4_extremal needs n >= 4")
    rule = InfectionRule(complete_graph(4), "clique 4")
    g = build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    while g.n < n:
        last = max(run_process(g, rule).rounds[-1])
        v = g.n
        g = g.with_vertices(1).add_edges([(last[0], v), (last[1], v)])
    return g


def star_extremal(t: int, n: int) -> Graph:
    """Disjoint stars K_{1,s} for s = 1..t-2 plus isolated vertices, n in total.

    Slow start for the rule K_{1,t-1}: the isolated part has n - C(t,2) + 1
    vertices.
    """
    if t < 3:
        raise GraphInputError("star_extremal needs t >= 3")
    if n < comb(t, 2):
        raise GraphInputError(f"need n >= C(t,2) = {comb(t, 2)}")
    edges = []
    base = 0
    for s in range(1, t - 1):
        edges += [(base, base + j) for j in range(1, s + 1)]
        base += s + 1
    return build_graph(n, edges)


def path_start(n: int) -> Graph:
    if n < 2:
        raise GraphInputError("path_start needs n >= 2")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])
