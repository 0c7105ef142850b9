"""Trigger gadgets, high-girth attachment graphs, cheap percolators and the
slow percolating wrapper.

A gadget is a long simple rule-chain with its designated edges removed,
plus two sparse "attachment" edge sets near its ends.  Adding the trigger
edge ``e`` sets off the chain (so the far non-edge ``f`` is infected), while
making the middle set ``U`` a clique makes the whole gadget percolate.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from ..engine import (
    InfectionRule,
    _as_rule,
    absorb_into_clique,
    adjacency,
    closure,
    is_stable,
    run_process,
    sparse_absorb,
    sparse_closure,
    sparse_run_process,
    sparse_is_stable,
)
from ..graphcore import (
    Edge,
    Graph,
    GraphInputError,
    build_graph,
    girth,
    norm_edge,
)
from .chains import ConstructionError


class GadgetVerificationError(ConstructionError):
    def __init__(self, clause: str, spec=None):
        super().__init__(f"gadget clause failed: {clause}")
        self.clause = clause
        self.spec = spec


@dataclass(frozen=True)
class GadgetParams:
    length: int  # chain length
    window: int  # attachment window w
    spacing: int  # attachment spacing s
    min_distance: int | None = None  # distance threshold, defaults to v(H)

    @staticmethod
    def threshold_defaults(k: int) -> "GadgetParams":
        """The proof's values: w = k^{3k}, s = k^2, length ceil((2k^{3k+3} - 2)/(k - 2))."""
        length = -(-(2 * k ** (3 * k + 3) - 2) // (k - 2))
        return GadgetParams(length, k ** (3 * k), k * k, k)


# above this many vertices the gadget is checked on adjacency sets
DENSE_LIMIT = 4000


@dataclass
class GadgetSpec:
    rule: InfectionRule
    params: GadgetParams
    n: int
    edges: frozenset
    e: Edge
    f: Edge
    core: tuple[int, ...]  # U
    chain_edges: frozenset = frozenset()  # Gamma without E' and E''
    flags: dict = field(default_factory=dict)
    distances: dict = field(default_factory=dict)
    route: str = ""

    @property
    def gamma(self) -> Graph:
        """The gadget as a bitset Graph (quadratic memory; fine below ~10^4 vertices)."""
        return build_graph(self.n, self.edges)

    @property
    def verified(self) -> bool:
        return bool(self.flags) and all(self.flags.values())

    def adjacency(self) -> list[set]:
        return adjacency(self.n, self.edges)


def _chain_order(h: Graph) -> list[int]:
    """Vertex order of H with positions (0,1) and (k-2,k-1) both edges."""
    edges = h.edges()
    for (a, b), (c, d) in itertools.combinations(edges, 2):
        if len({a, b, c, d}) == 4:
            rest = [v for v in range(h.n) if v not in (a, b, c, d)]
            return [a, b] + rest + [c, d]
    raise GraphInputError("rule needs two disjoint edges to form a simple chain")


def simple_rule_chain_edges(h: Graph, length: int) -> tuple[int, list[set], list[Edge]]:
    """Copies of H on consecutive windows sharing one edge.

    Returns (vertex count, per-copy edge sets, designated edges).
    """
    k = h.n
    order = _chain_order(h)
    pos = {v: t for t, v in enumerate(order)}
    r = 2 + (k - 2) * length
    copies, des = [], []
    for i in range(length):
        base = i * (k - 2)
        copies.append({norm_edge(base + pos[a], base + pos[b]) for a, b in h.edges()})
        des.append((base + k - 2, base + k - 1))
    return r, copies, des


def _attachment_edges(r: int, window: int, spacing: int, delta: int) -> tuple[set, set]:
    """E' joins v_i (i <= window) to v_{s t} for the i-th block of delta-1 values t; E'' mirrors it."""
    low, high = set(), set()
    for i in range(1, window + 1):
        for t in range((i - 1) * (delta - 1) + 1, i * (delta - 1) + 1):
            j = spacing * t
            if j > r:
                raise GraphInputError("attachment target beyond the chain; increase length")
            low.add(norm_edge(i - 1, j - 1))
            high.add(norm_edge(r - i, r - j))
    return low, high


def gadget_graph(rule, params: GadgetParams, verify: bool = True, route: str = "auto") -> GadgetSpec:
    """Build the gadget and (by default) verify its three clauses computationally.

    Vertices ``0..r-1`` are v_1..v_r; ``e = v_1 v_2``, ``f`` is the last
    designated pair and ``U = {v_{w+1}, ..., v_{r-w}}``.
    """
    rule = _as_rule(rule)
    h = rule.graph
    k = h.n
    delta = rule.min_degree
    if delta < 2:
        raise GraphInputError("gadgets need a rule of minimum degree at least 2")
    r, copies, des = simple_rule_chain_edges(h, params.length)
    w, s = params.window, params.spacing
    if s * w * (delta - 1) > r // 2:
        raise GraphInputError(
            f"attachment targets reach index {s * w * (delta - 1)} beyond half the chain ({r // 2}); increase length"
        )
    if r - 2 * w < k - 1:
        raise GraphInputError("core window too small")
    low, high = _attachment_edges(r, w, s, delta)
    chain = set().union(*copies) - set(des)
    edges = chain | low | high
    e = (0, 1)
    f = des[-1]
    if f in edges:
        raise GadgetVerificationError("f must be a non-edge of the gadget (spacing too small)")
    spec = GadgetSpec(rule, params, r, frozenset(edges), e, f, tuple(range(w, r - w)), frozenset(chain))
    if verify:
        verify_gadget(spec, route=route)
    return spec


def _bfs(adj, sources, limit: int | None = None) -> dict:
    dist = {x: 0 for x in sources}
    front = list(dist)
    d = 0
    while front and (limit is None or d < limit):
        d += 1
        nxt = []
        for v in front:
            for u in adj[v]:
                if u not in dist:
                    dist[u] = d
                    nxt.append(u)
        front = nxt
    return dist


def _distances(spec: GadgetSpec, adj) -> dict:
    de = _bfs(adj, spec.e)
    df = _bfs(adj, spec.f)
    inf = math.inf
    return {
        "e_f": min(de.get(x, inf) for x in spec.f),
        "U_ef": min(min(de.get(x, inf), df.get(x, inf)) for x in spec.core),
    }


def verify_gadget(spec: GadgetSpec, raise_on_failure: bool = True, route: str = "auto") -> GadgetSpec:
    """Compute every clause flag.

    ``route`` picks the engine: ``dense`` (bitset Graph), ``sparse``
    (adjacency sets with local searches) or ``auto`` (by size).
    """
    rule, e, f = spec.rule, spec.e, spec.f
    dmin = spec.params.min_distance or rule.v
    if route == "auto":
        route = "dense" if spec.n <= DENSE_LIMIT else "sparse"
    spec.route = route
    adj = spec.adjacency()
    spec.distances = _distances(spec, adj)
    spec.flags["dist_e_f"] = spec.distances["e_f"] >= dmin
    spec.flags["dist_U"] = spec.distances["U_ef"] >= dmin
    if route == "dense":
        gamma = spec.gamma
        spec.flags["stable_without_e"] = is_stable(gamma.remove_edges([e]), rule)
        spec.flags["f_infected"] = bool(closure(gamma, rule, target=f).has_edge(*f))
        absorbed, _ = absorb_into_clique(gamma, rule, spec.core)
        spec.flags["core_percolates"] = absorbed == (1 << gamma.n) - 1
    elif route == "sparse":
        minus = [set(x) for x in adj]
        minus[e[0]].discard(e[1])
        minus[e[1]].discard(e[0])
        spec.flags["stable_without_e"] = sparse_is_stable(minus, rule)
        # final(.) is monotone, so reaching f from the chain part alone
        # (Gamma minus the attachment edges) shows f is in final(Gamma);
        # the full closure of Gamma fills in densely and does not fit
        chain_adj = adjacency(spec.n, spec.chain_edges)
        closed, _, _ = sparse_closure(chain_adj, rule, target=f)
        spec.flags["f_infected"] = f[1] in closed[f[0]]
        absorbed, _ = sparse_absorb(adj, rule, spec.core)
        spec.flags["core_percolates"] = len(absorbed) == spec.n
    else:
        raise ValueError(f"unknown route {route!r}")
    if raise_on_failure:
        for clause, ok in spec.flags.items():
            if not ok:
                raise GadgetVerificationError(clause, spec)
    return spec


def _length_for(k: int, window: int, spacing: int, delta: int) -> int:
    need_r = max(2 * spacing * window * (delta - 1), 2 * window + k)
    return max(2, -(-(need_r - 2) // (k - 2)))


def _params_for(rule: InfectionRule, window: int, spacing: int, dmin: int) -> GadgetParams:
    return GadgetParams(_length_for(rule.v, window, spacing, rule.min_degree), window, spacing, dmin)


def _distance_ok(rule: InfectionRule, params: GadgetParams) -> bool:
    spec = gadget_graph(rule, params, verify=False)
    d = _distances(spec, spec.adjacency())
    return d["e_f"] >= params.min_distance and d["U_ef"] >= params.min_distance


def minimal_window(rule, spacing: int, min_distance: int | None = None, max_vertices: int = 10**6) -> int:
    """Smallest window passing both distance clauses (doubling, then bisection).

    The distance clauses are monotone in the window for the layouts that
    occur here; the bisection result is re-checked by the full verification
    anyway.  Raises GraphInputError once the gadget would exceed
    ``max_vertices``.
    """
    rule = _as_rule(rule)
    dmin = min_distance or rule.v
    hi = 1
    while not _distance_ok(rule, _params_for(rule, hi, spacing, dmin)):
        hi *= 2
        if 2 + (rule.v - 2) * _params_for(rule, hi, spacing, dmin).length > max_vertices:
            raise GraphInputError(f"no window within {max_vertices} vertices at spacing {spacing}")
    lo = hi // 2 + 1 if hi > 1 else 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _distance_ok(rule, _params_for(rule, mid, spacing, dmin)):
            hi = mid
        else:
            lo = mid + 1
    return lo


def search_gadget_params(rule, spacings=(3, 4, 5), min_distance: int | None = None, max_vertices: int = 10**6) -> GadgetSpec:
    """Smallest verified gadget over the given spacings.

    Per spacing: least window passing the distance clauses, least chain
    length keeping the attachment targets in the lower half.  Candidates are
    then fully verified in order of vertex count; failures are collected and
    reported.  Spacings below 3 put f into E'' and are skipped.
    """
    rule = _as_rule(rule)
    k = rule.v
    dmin = min_distance or k
    tried = []
    budget = max_vertices
    for s in spacings:
        if s < 3:
            continue
        try:
            w = minimal_window(rule, s, dmin, budget)
        except GraphInputError:
            continue
        params = _params_for(rule, w, s, dmin)
        tried.append(params)
        budget = min(budget, 2 + (k - 2) * params.length)
    tried.sort(key=lambda p: p.length)
    failures = []
    for params in tried:
        try:
            return gadget_graph(rule, params)
        except GadgetVerificationError as exc:
            failures.append((params, exc.clause))
    raise GadgetVerificationError(f"no candidate passed: {failures or 'no spacing fits the vertex budget'}")


# ---------------------------------------------------------------------------
# High-girth bipartite attachment graphs
# ---------------------------------------------------------------------------


def high_girth_bipartite(
    n: int, k: int, d: int, seed: int, y_size: int | None = None, retries: int = 20, forbidden: dict | None = None
) -> Graph:
    """Bipartite graph, X = 0..n-1 and Y = n..n+|Y|-1 (|Y| = 2kn by default),
    every Y-vertex of degree d, girth at least k + 1.  ``forbidden`` maps a
    Y-index (0-based) to X-vertices it must not use.

    Random greedy: each Y-vertex picks d X-neighbours one at a time among
    those at distance > k - 1 from its already chosen neighbours, so no cycle
    of length <= k closes.  Seeded; retries with fresh randomness.
    """
    if d < 1 or n < d:
        raise GraphInputError("need 1 <= d <= n")
    ys = 2 * k * n if y_size is None else y_size
    rng = random.Random(seed)
    for _ in range(retries):
        adj: list[set] = [set() for _ in range(n + ys)]
        ok = True
        for y in range(n, n + ys):
            chosen: list[int] = []
            for _ in range(d):
                # X-vertices within distance k-1 of y (through chosen) are forbidden
                dist = _bounded_bfs(adj, chosen, k - 2)
                banned = forbidden.get(y - n, ()) if forbidden else ()
                allowed = [x for x in range(n) if x not in dist and x not in banned]
                if not allowed:
                    ok = False
                    break
                x = rng.choice(allowed)
                chosen.append(x)
                adj[x].add(y)
                adj[y].add(x)
            if not ok:
                break
        if ok:
            g = build_graph(n + ys, [(u, v) for u in range(n + ys) for v in adj[u] if u < v])
            gi = girth(g)
            if gi == "acyclic" or gi >= k + 1:
                return g
    raise ConstructionError(f"no girth >= {k + 1} bipartite graph found after {retries} tries; use a larger n")


def _bounded_bfs(adj, sources, radius: int) -> dict:
    dist = {s: 0 for s in sources}
    frontier = list(sources)
    for step in range(1, radius + 1):
        nxt = []
        for v in frontier:
            for w in adj[v]:
                if w not in dist:
                    dist[w] = step
                    nxt.append(w)
        frontier = nxt
    return dist


# ---------------------------------------------------------------------------
# Cheap percolators and the wrapper
# ---------------------------------------------------------------------------


def cheap_percolator(rule, n: int, core: list[int] | None = None, order: list[int] | None = None) -> Graph:
    """Clique W on v(H)-1 vertices, every other vertex joined to delta(H)-1 of W.

    ``core`` picks W (default the first v(H)-1 vertices); ``order`` lists the
    remaining vertices.
    """
    rule = _as_rule(rule)
    v, delta = rule.v, rule.min_degree
    if n < v:
        raise GraphInputError(f"need n >= v(H) = {v}")
    core = list(core) if core is not None else list(range(v - 1))
    if len(core) < v - 1:
        raise GraphInputError("core too small")
    rest = order if order is not None else [x for x in range(n) if x not in set(core)]
    edges = {norm_edge(a, b) for a, b in itertools.combinations(core, 2)}
    for x in rest:
        for c in core[: delta - 1]:
            edges.add(norm_edge(x, c))
    return build_graph(n, edges)


@dataclass
class WrapperResult:
    n: int
    edges: frozenset
    base_n: int
    independent: tuple[int, ...]
    gadgets: list  # (f, vertex map) per gadget
    last_edge: Edge
    attachment_girth: object
    params: GadgetParams
    base_rounds: list = field(default_factory=list)
    clique: tuple = ()  # the clique of G'

    @property
    def graph(self) -> Graph:
        return build_graph(self.n, self.edges)

    @property
    def vertex_ratio(self) -> float:
        return self.n / self.base_n


def verify_wrapper(res: WrapperResult, rule, route: str = "auto") -> dict:
    """Engine checks of the wrapper contract.

    ``prefix``: the first tau(g) rounds on the wrapper are exactly g's
    rounds (so tau >= tau(g)); ``percolates``: the wrapper percolates.
    """
    rule = _as_rule(rule)
    tau = len(res.base_rounds)
    if route == "auto":
        route = "dense" if res.n <= DENSE_LIMIT else "sparse"
    if route == "dense":
        g = res.graph
        trace = run_process(g, rule)
        prefix = trace.rounds[:tau] == res.base_rounds
        perc = trace.percolated
        total = trace.tau
    else:
        adj = adjacency(res.n, res.edges)
        rounds, more = sparse_run_process(adj, rule, tau)
        prefix = rounds == res.base_rounds
        perc = wrapper_percolates(res, rule, adj)
        total = tau + 1 if more else len(rounds)
    return {"route": route, "prefix": prefix, "percolates": perc, "tau_lower_bound": total}


def wrapper_percolates(res: WrapperResult, rule, adj: list[set] | None = None) -> bool:
    """Percolation of the wrapper, certified in three monotone steps.

    1. final(g) lies in the final graph, so its rounds are added.
    2. Each gadget's target f is reached by a closure of that gadget's
       chain edges alone (with e_tau present), a subgraph of the host.
    3. Absorption seeded at the clique of G' (witness-checked) must then
       swallow every vertex.
    Every edge added is in final(wrapper), so a full absorption proves
    percolation.  A False answer only means this certificate failed.
    """
    rule = _as_rule(rule)
    adj = [set(x) for x in (adj if adj is not None else adjacency(res.n, res.edges))]
    for r in res.base_rounds:
        for u, v in r:
            adj[u].add(v)
            adj[v].add(u)
    spec = gadget_graph(rule, res.params, verify=False)
    chain = sorted(spec.chain_edges)
    for f, vmap in res.gadgets:
        local = sorted(set(vmap.values()))
        idx = {v: i for i, v in enumerate(local)}
        sub = adjacency(len(local), [(idx[vmap[a]], idx[vmap[b]]) for a, b in chain])
        a, b = idx[vmap[spec.e[0]]], idx[vmap[spec.e[1]]]
        sub[a].add(b)
        sub[b].add(a)
        fa, fb = idx[f[0]], idx[f[1]]
        closed, _, _ = sparse_closure(sub, rule, target=(fa, fb))
        if fb not in closed[fa]:
            return False
        adj[f[0]].add(f[1])
        adj[f[1]].add(f[0])
    absorbed, _ = sparse_absorb(adj, rule, res.clique)
    return len(absorbed) == res.n


def slow_percolating_wrapper(
    rule,
    g: Graph,
    gadget_params: GadgetParams,
    independent_size: int | None = None,
    attachment_girth: int | None = None,
    seed: int = 0,
) -> WrapperResult:
    """Extend ``g`` to a percolating graph whose process keeps g's first rounds.

    Steps: run the process on g and take an edge ``e_tau`` of its last round;
    add an independent set I; lay a cheap percolator G' on V(g) + I whose
    clique sits on a final-graph clique through ``e_tau``; for each edge f of
    G' missing from final(g) place a gadget with e -> e_tau and f -> f on
    fresh vertices; attach each core vertex to delta(H)-1 vertices of I
    through a bipartite graph of girth >= ``attachment_girth`` (default
    v(H)+1).
    """
    rule = _as_rule(rule)
    k, delta = rule.v, rule.min_degree
    trace = run_process(g, rule)
    if trace.tau == 0:
        raise GraphInputError("the base graph is already stable")
    e_tau = min(trace.rounds[-1])
    final = trace.final
    n = g.n
    spec = gadget_graph(rule, gadget_params, verify=True)
    d_att = len(spec.core) * (delta - 1)
    # two spare vertices so no gadget needs the endpoints of its own f
    i_size = independent_size if independent_size is not None else max(n, d_att + 2)
    independent = tuple(range(n, n + i_size))
    # a clique of final(g) through e_tau carries the clique of G'
    W = _final_clique_through(final, e_tau, k)
    anchors = [x for x in W if x not in e_tau][: max(delta - 1, 0)]
    if len(W) < k - 1 or len(anchors) < delta - 1:
        raise ConstructionError("final graph has no large enough clique through the last edge")
    others = [x for x in range(n + i_size) if x not in set(W)]
    # G': the cheap percolator on V(g) + I with its clique on W and every
    # other vertex attached to W away from e_tau's endpoints
    gp_edges = {norm_edge(a, b) for a, b in itertools.combinations(W, 2)}
    for x in others:
        for c in anchors:
            gp_edges.add(norm_edge(x, c))
    missing = sorted(e for e in gp_edges if not final.has_edge(*e))
    edges = set(g.edges())
    vmap_all = []
    next_v = n + i_size
    core_vertices = []
    for f in missing:
        vmap = {}
        vmap[spec.e[0]], vmap[spec.e[1]] = e_tau
        vmap[spec.f[0]], vmap[spec.f[1]] = f
        for x in range(spec.n):
            if x not in vmap:
                vmap[x] = next_v
                next_v += 1
        for a, b in sorted(spec.edges):
            ea = norm_edge(vmap[a], vmap[b])
            if ea != norm_edge(*e_tau):
                edges.add(ea)
        vmap_all.append((f, vmap))
        core_vertices.append([vmap[u] for u in spec.core])
    # attachment: each gadget (a Y-vertex) needs |U|(delta-1) distinct I-neighbours
    att_girth = attachment_girth if attachment_girth is not None else k + 1
    if d_att > 0 and missing:
        if d_att > i_size:
            raise ConstructionError(f"independent set of size {i_size} cannot host degree {d_att}")
        # a core vertex next to an endpoint of its own gadget's f (or of
        # e_tau) can close a copy of H before e_tau appears
        banned = {}
        for idx, f in enumerate(missing):
            banned[idx] = {x - n for x in (*f, *e_tau) if n <= x < n + i_size}
        b = high_girth_bipartite(i_size, max(att_girth - 1, 2), d_att, seed, y_size=len(missing), forbidden=banned)
        # the split of N_B(U^f) into the sets N_u is random (seeded) so that
        # core vertices of different gadgets rarely share all their I-neighbours
        rng = random.Random(seed + 1)
        for idx, cores in enumerate(core_vertices):
            y = i_size + idx
            nbrs = sorted(b.neighbors(y))
            rng.shuffle(nbrs)
            for t, u in enumerate(cores):
                for x in nbrs[t * (delta - 1) : (t + 1) * (delta - 1)]:
                    edges.add(norm_edge(u, independent[x]))
        achieved = girth(b)
    else:
        achieved = "acyclic"
    return WrapperResult(next_v, frozenset(edges), n, independent, vmap_all, e_tau, achieved, gadget_params, trace.rounds, tuple(W))


def _final_clique_through(final: Graph, e: Edge, k: int) -> list[int]:
    """Greedy maximal clique of ``final`` containing both endpoints of ``e``."""
    a, b = e
    clique = [a, b]
    cand = final.rows[a] & final.rows[b]
    while cand:
        best = max((x for x in range(final.n) if cand >> x & 1), key=lambda x: ((final.rows[x] & cand).bit_count(), -x))
        clique.append(best)
        cand &= final.rows[best]
    return sorted(clique)
