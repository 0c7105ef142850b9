"""Builtin infection rules and the textual rule-spec parser.

Spec grammar (whitespace separated, a trailing number may be glued on)::

    clique 4 | clique4 | cycle 5 | path 4 | star 4 | bipartite 3 3
    wheel 7 | cube | clique-plus-pendant 3 | glued-cliques 5
    pendant-simulation | square-of-cycle 7 | file:<path>
    <spec> + <spec>          disjoint union

``path t`` and ``star t`` have ``t`` vertices (the star is K_{1,t-1});
``wheel k`` is a k-cycle plus a hub (k+1 vertices).
"""

from __future__ import annotations

import os
import re

from .engine import InfectionRule
from .graphcore import Graph, GraphInputError, build_graph, complete_graph, read_graph


class RuleSpecError(ValueError):
    """Raised for rule specs that do not parse; names the offending token."""

    def __init__(self, message: str, token: str):
        super().__init__(f"{message}: {token!r}")
        self.token = token


def clique(k: int) -> Graph:
    return complete_graph(k)


def cycle(k: int) -> Graph:
    if k < 3:
        raise GraphInputError("cycles need k >= 3")
    return build_graph(k, [(i, (i + 1) % k) for i in range(k)])


def path(t: int) -> Graph:
    if t < 2:
        raise GraphInputError("a path rule needs t >= 2 vertices")
    return build_graph(t, [(i, i + 1) for i in range(t - 1)])


def star(t: int) -> Graph:
    """K_{1,t-1}: centre 0 and t-1 leaves."""
    if t < 2:
        raise GraphInputError("a star rule needs t >= 2 vertices")
    return build_graph(t, [(0, i) for i in range(1, t)])


def complete_bipartite(r: int, s: int) -> Graph:
    return build_graph(r + s, [(i, r + j) for i in range(r) for j in range(s)])


def wheel(k: int) -> Graph:
    """k-cycle on 0..k-1 plus hub k."""
    return cycle(k).with_vertices(1).add_edges([(i, k) for i in range(k)])


def cube() -> Graph:
    return build_graph(8, [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)])


def clique_plus_pendant(k: int) -> Graph:
    """K_k with one extra vertex k hanging off vertex 0."""
    return complete_graph(k).with_vertices(1).add_edges([(0, k)])


def square_of_cycle(k: int) -> Graph:
    if k < 5:
        raise GraphInputError("square of a cycle needs k >= 5")
    return build_graph(k, [(i, (i + d) % k) for i in range(k) for d in (1, 2)])


def disjoint_union(a: Graph, b: Graph) -> Graph:
    return a.disjoint_union(b)


_ARITY = {
    "clique": 1,
    "cycle": 1,
    "path": 1,
    "star": 1,
    "bipartite": 2,
    "complete-bipartite": 2,
    "wheel": 1,
    "cube": 0,
    "clique-plus-pendant": 1,
    "glued-cliques": 1,
    "pendant-simulation": 0,
    "square-of-cycle": 1,
}


def _builtin(name: str, args: list[int]) -> InfectionRule:
    # late import: special rules live with the constructions
    from .constructions.special import glued_cliques_graph, pendant_simulation_graph

    builders = {
        "clique": lambda k: clique(k),
        "cycle": lambda k: cycle(k),
        "path": lambda t: path(t),
        "star": lambda t: star(t),
        "bipartite": lambda r, s: complete_bipartite(r, s),
        "complete-bipartite": lambda r, s: complete_bipartite(r, s),
        "wheel": lambda k: wheel(k),
        "cube": lambda: cube(),
        "clique-plus-pendant": lambda k: clique_plus_pendant(k),
        "glued-cliques": lambda k: glued_cliques_graph(k),
        "pendant-simulation": lambda: pendant_simulation_graph(),
        "square-of-cycle": lambda k: square_of_cycle(k),
    }
    g = builders[name](*args)
    label = name if not args else name + "".join(f" {a}" for a in args)
    return InfectionRule(g, label)


def _parse_single(text: str) -> InfectionRule:
    text = text.strip()
    if not text:
        raise RuleSpecError("empty rule spec", text)
    if text.startswith("file:") or os.path.sep in text or os.path.exists(text):
        path_ = text[5:] if text.startswith("file:") else text
        try:
            g = read_graph(path_)
        except OSError:
            raise RuleSpecError("cannot read rule graph file", path_) from None
        return InfectionRule(g, f"file:{os.path.basename(path_)}")
    tokens = text.split()
    head = tokens[0]
    m = re.fullmatch(r"([a-z][a-z-]*?)(\d+)", head)
    if m and m.group(1) in _ARITY:
        tokens = [m.group(1), m.group(2)] + tokens[1:]
        head = m.group(1)
    if head not in _ARITY:
        raise RuleSpecError("unknown rule name", head)
    want = _ARITY[head]
    raw = tokens[1:]
    if len(raw) != want:
        bad = raw[want] if len(raw) > want else head
        raise RuleSpecError(f"{head} takes {want} integer parameter(s)", bad)
    args = []
    for tok in raw:
        if not re.fullmatch(r"\d+", tok):
            raise RuleSpecError("expected a non-negative integer", tok)
        args.append(int(tok))
    try:
        return _builtin(head, args)
    except GraphInputError as exc:
        raise RuleSpecError(str(exc), text) from None


def parse_rule(text: str) -> InfectionRule:
    """Resolve a rule spec (see module docstring) to an InfectionRule."""
    parts = text.split("+")
    rules = [_parse_single(p) for p in parts]
    if len(rules) == 1:
        return rules[0]
    g = rules[0].graph
    for r in rules[1:]:
        g = g.disjoint_union(r.graph)
    return InfectionRule(g, " + ".join(r.name for r in rules))
