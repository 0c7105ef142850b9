"""Rules built for specific phenomena: a minimum-degree-one rule that can
replay a slow K6 process, and two cliques glued along an edge."""

from __future__ import annotations

from ..engine import InfectionRule
from ..graphcore import Graph, GraphInputError, build_graph, complete_graph

# vertex layout of the pendant simulation rule
SIM_B = tuple(range(6))  # the K6 part
SIM_A = tuple(range(6, 15))  # the K9 part, SIM_U is in here
SIM_U = 6
SIM_PENDANT = 15


def pendant_simulation_graph() -> Graph:
    """K6 on 0..5, K9 on 6..14 whose vertex 6 is adjacent to everything, pendant 15 at 6."""
    edges = set()
    for part in (SIM_B, SIM_A):
        edges |= {(a, b) for a in part for b in part if a < b}
    edges |= {(b, SIM_U) for b in SIM_B}
    edges.add((SIM_U, SIM_PENDANT))
    return build_graph(16, edges)


def attach_simulator(g: Graph) -> tuple[Graph, int]:
    """g plus a disjoint K9 one of whose vertices is joined to all of V(g).

    Returns the extended graph and the joined vertex ``w``.
    """
    n = g.n
    ext = g.disjoint_union(complete_graph(9))
    w = n
    return ext.add_edges((v, w) for v in range(n)), w


def pendant_simulation_rule():
    """The 16-vertex rule and the start builder ``g -> g + K9 (w joined to V(g))``."""
    rule = InfectionRule(pendant_simulation_graph(), "pendant-simulation")

    def start_builder(g: Graph) -> Graph:
        return attach_simulator(g)[0]

    return rule, start_builder


def glued_cliques_graph(k: int) -> Graph:
    """Two K_k sharing the edge 01, plus the edge (2, k) across the halves."""
    if k < 4:
        raise GraphInputError(f"glued cliques need k >= 4 (k={k} collapses to K4)")
    first = [0, 1] + list(range(2, k))
    second = [0, 1] + list(range(k, 2 * k - 2))
    edges = set()
    for part in (first, second):
        edges |= {(a, b) for a in part for b in part if a < b}
    edges.add((2, k))
    return build_graph(2 * k - 2, edges)


def glued_cliques_rule(k: int) -> InfectionRule:
    return InfectionRule(glued_cliques_graph(k), f"glued-cliques {k}")
