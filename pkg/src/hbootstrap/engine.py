"""The H-bootstrap process: infection rounds, running time, final graph.

A non-edge ``e`` of ``G`` is infected when ``G + e`` contains a copy of the
rule graph ``H`` that uses ``e``.  Rounds are synchronous.  The final graph is
order independent (it is the least supergraph closed under infection), which
``closure`` exploits with a worklist instead of synchronous rounds.
"""

from __future__ import annotations

import heapq
import itertools
import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .graphcore import (
    Edge,
    EdgeOrbitPartition,
    Graph,
    GraphInputError,
    SearchPlan,
    _bits,
    _search,
    ball_mask,
    bfs_distances,
    build_graph,
    components,
    edge_orbits,
    norm_edge,
)


@dataclass(frozen=True)
class _Anchor:
    """Precomputed anchored search for one edge-orbit representative."""

    edge: Edge
    # plan anchored a->x, b->y; plus b->x, a->y unless an automorphism swaps a, b
    plans: tuple
    bridge: bool  # endpoints disconnected in H - edge
    gap: float  # dist_{H - edge}(a, b), inf for bridges
    common: int  # common neighbours of a, b in H
    deg_pair: tuple[int, int]


class InfectionRule:
    """A rule graph with cached orbits, degree statistics and search plans."""

    def __init__(self, graph: Graph, name: str | None = None):
        if graph.m == 0:
            raise GraphInputError("an infection rule needs at least one edge")
        self.graph = graph
        self.name = name or f"graph:{graph.n}:{graph.m}"
        self.orbits: EdgeOrbitPartition = edge_orbits(graph)
        degs = graph.degrees()
        self.v = graph.n
        self.e = graph.m
        self.min_degree = min(degs)
        self.max_degree = max(degs)
        self.connected = len(components(graph)) == 1
        anchors = []
        radius = 0
        for (a, b), rev in zip(self.orbits.representatives, self.orbits.reversible):
            plans = [SearchPlan(graph, [a, b])]
            if not rev:
                plans.append(SearchPlan(graph, [b, a]))
            minus = graph.remove_edges([(a, b)])
            da = bfs_distances(minus, [a])
            gap = da.get(b, float("inf"))
            for comp in components(minus):
                # only components that touch the anchored edge matter
                if a in comp or b in comp:
                    sub = minus.induced(comp)
                    for v in range(sub.n):
                        d = bfs_distances(sub, [v])
                        radius = max(radius, max(d.values()))
            common = (graph.rows[a] & graph.rows[b]).bit_count()
            anchors.append(_Anchor((a, b), tuple(plans), b not in da, gap, common, (degs[a], degs[b])))
        self.anchors = tuple(anchors)
        # every copy through e reaches any of its edges within `radius` of e
        self.radius = radius
        self.has_bridge_anchor = any(an.bridge for an in self.anchors)
        # candidate pairs must be within `reach` unless a bridge anchor exists
        self.reach = max(an.gap for an in self.anchors)

    @property
    def lam(self) -> Fraction | None:
        """(e(H) - 2) / (v(H) - 2), defined for v(H) > 2."""
        if self.v <= 2:
            return None
        return Fraction(self.e - 2, self.v - 2)

    @property
    def stats(self) -> dict:
        return {
            "v": self.v,
            "e": self.e,
            "min_degree": self.min_degree,
            "max_degree": self.max_degree,
            "lambda": self.lam,
        }

    def __repr__(self):
        return f"InfectionRule({self.name}, v={self.v}, e={self.e})"


def _as_rule(rule) -> InfectionRule:
    return rule if isinstance(rule, InfectionRule) else InfectionRule(rule)


class _Tester:
    """Mutable host state for repeated 'does xy complete a copy' queries."""

    def __init__(self, g: Graph, rule: InfectionRule):
        self.rule = rule
        self.rows = list(g.rows)
        self.deg = [r.bit_count() for r in self.rows]
        self.allmask = (1 << g.n) - 1

    def add(self, u: int, v: int):
        self.rows[u] |= 1 << v
        self.rows[v] |= 1 << u
        self.deg[u] += 1
        self.deg[v] += 1

    def witness(self, x: int, y: int, anchors=None) -> list[int] | None:
        """Pattern-indexed image of a copy of H through the non-edge xy."""
        rows, deg = self.rows, self.deg
        common = (rows[x] & rows[y]).bit_count()
        dx, dy = deg[x] + 1, deg[y] + 1
        found = None
        rows[x] |= 1 << y
        rows[y] |= 1 << x
        deg[x] = dx
        deg[y] = dy
        try:
            for an in anchors or self.rule.anchors:
                if an.common > common:
                    continue
                da, db = an.deg_pair
                if not ((da <= dx and db <= dy) or (da <= dy and db <= dx)):
                    continue
                for plan in an.plans:
                    hit = next(_search(plan, rows, deg, self.allmask, (x, y)), None)
                    if hit is not None:
                        found = [0] * len(hit)
                        for pos, pv in enumerate(plan.order):
                            found[pv] = hit[pos]
                        return found
        finally:
            rows[x] &= ~(1 << y)
            rows[y] &= ~(1 << x)
            deg[x] = dx - 1
            deg[y] = dy - 1
        return found

    def infects(self, x: int, y: int) -> bool:
        return self.witness(x, y) is not None


def _candidate_pairs(rows: Sequence[int], n: int, rule: InfectionRule, near: int | None) -> list[Edge]:
    """Non-edges worth testing.

    ``near`` is a vertex mask; when given, only pairs that can see a recently
    added edge through a copy of H are returned.
    """
    full = (1 << n) - 1
    out = []
    if not rule.connected:
        near = None
    one_sided = rule.has_bridge_anchor
    reach = rule.reach
    use_reach = not one_sided and reach != float("inf")
    for x in range(n):
        miss = full & ~rows[x] & ~((1 << (x + 1)) - 1)
        if not miss:
            continue
        if near is not None:
            if near >> x & 1:
                if not one_sided:
                    miss &= near
            elif one_sided:
                miss &= near
            else:
                continue
        if use_reach and miss:
            miss &= ball_mask(rows, 1 << x, int(reach))
        for y in _bits(miss):
            out.append((x, y))
    return out


def infect_step(g: Graph, rule) -> set[Edge]:
    """All non-edges ``e`` such that ``g + e`` has a copy of the rule through ``e``."""
    rule = _as_rule(rule)
    if rule.e == 1:
        return set(g.non_edges())
    t = _Tester(g, rule)
    return {e for e in _candidate_pairs(g.rows, g.n, rule, None) if t.infects(*e)}


def is_stable(g: Graph, rule) -> bool:
    rule = _as_rule(rule)
    if rule.e == 1:
        return g.is_complete()
    t = _Tester(g, rule)
    return not any(t.infects(*e) for e in _candidate_pairs(g.rows, g.n, rule, None))


@dataclass
class ProcessTrace:
    start: Graph
    rounds: list[frozenset]
    final: Graph
    truncated: bool = False
    rule_name: str = ""

    @property
    def tau(self) -> int:
        return len(self.rounds)

    @property
    def percolated(self) -> bool:
        return self.final.is_complete()

    def graph_at(self, i: int) -> Graph:
        """G_i: start plus the first ``i`` rounds."""
        g = self.start
        for r in self.rounds[:i]:
            g = g.add_edges(r)
        return g

    def first_round(self) -> dict[Edge, int]:
        """Round (1-based) in which each infected edge appeared."""
        return {e: i + 1 for i, r in enumerate(self.rounds) for e in r}

    def to_json(self) -> str:
        doc = {
            "n": self.start.n,
            "rule": self.rule_name,
            "start": [f"{u} {v}" for u, v in self.start.edges()],
            "rounds": [[f"{u} {v}" for u, v in sorted(r)] for r in self.rounds],
            "tau": self.tau,
            "percolated": self.percolated,
            "truncated": self.truncated,
        }
        return json.dumps(doc, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "ProcessTrace":
        doc = json.loads(text)

        def pairs(items):
            return [tuple(int(x) for x in s.split()) for s in items]

        start = build_graph(doc["n"], pairs(doc["start"]))
        rounds = [frozenset(pairs(r)) for r in doc["rounds"]]
        final = start
        for r in rounds:
            final = final.add_edges(r)
        return cls(start, rounds, final, doc.get("truncated", False), doc.get("rule", ""))


def run_process(g: Graph, rule, max_rounds: int | None = None, incremental: bool = True) -> ProcessTrace:
    """Run synchronous rounds until nothing new is infected (or ``max_rounds``)."""
    rule = _as_rule(rule)
    n = g.n
    if max_rounds is None:
        max_rounds = n * (n - 1) // 2 - g.m + 1
    rounds: list[frozenset] = []
    if rule.e == 1:
        new = g.non_edges()
        if new and max_rounds >= 1:
            rounds.append(frozenset(new))
            return ProcessTrace(g, rounds, g.add_edges(new), False, rule.name)
        return ProcessTrace(g, rounds, g, bool(new), rule.name)
    t = _Tester(g, rule)
    near = None
    truncated = False
    while True:
        cands = _candidate_pairs(t.rows, n, rule, near if incremental else None)
        new = [e for e in cands if t.infects(*e)]
        if not new:
            break
        if len(rounds) >= max_rounds:
            truncated = True
            break
        for u, v in new:
            t.add(u, v)
        rounds.append(frozenset(new))
        src = 0
        for u, v in new:
            src |= (1 << u) | (1 << v)
        near = ball_mask(t.rows, src, rule.radius)
    return ProcessTrace(g, rounds, Graph(n, t.rows), truncated, rule.name)


# ---------------------------------------------------------------------------
# Reference stepper: literal copy counting over all injective maps
# ---------------------------------------------------------------------------


def count_labelled_copies(h: Graph, g: Graph) -> int:
    """Number of injective maps V(H) -> V(G) sending every edge of H to an edge of G.

    Equals n_H(G) times |Aut(H)|, so comparisons of counts are comparisons
    of copy counts.
    """
    hedges = h.edges()
    count = 0
    for phi in itertools.permutations(range(g.n), h.n):
        if all(g.rows[phi[a]] >> phi[b] & 1 for a, b in hedges):
            count += 1
    return count


def naive_infect_step(g: Graph, rule) -> set[Edge]:
    h = rule.graph if isinstance(rule, InfectionRule) else rule
    base = count_labelled_copies(h, g)
    return {e for e in g.non_edges() if count_labelled_copies(h, g.add_edges([e])) > base}


def naive_run_process(g: Graph, rule) -> ProcessTrace:
    rounds = []
    cur = g
    while True:
        new = naive_infect_step(cur, rule)
        if not new:
            break
        rounds.append(frozenset(new))
        cur = cur.add_edges(new)
    name = rule.name if isinstance(rule, InfectionRule) else ""
    return ProcessTrace(g, rounds, cur, False, name)


# ---------------------------------------------------------------------------
# Final graph via worklist closure
# ---------------------------------------------------------------------------


def closure(g: Graph, rule, target: Edge | None = None, absorb: bool = True) -> Graph:
    """Final graph of the H-process (order independent least fixed point).

    With ``target`` the search stops as soon as that pair is infected and
    the partially closed graph is returned.  With ``absorb`` the worklist is
    interleaved with the clique-absorption law: once a clique of size
    v(H)-1 is present, every vertex with delta(H)-1 neighbours in it joins
    it (each step backed by a checked embedding).  Both modes return the
    same final graph; absorption only saves work on dense outcomes.
    """
    rule = _as_rule(rule)
    n = g.n
    if rule.e == 1:
        return g.add_edges(g.non_edges())
    t = _Tester(g, rule)
    goal = norm_edge(*target) if target is not None else None
    use_absorb = absorb and goal is None and rule.min_degree >= 1
    W = 0
    pending = set(_candidate_pairs(t.rows, n, rule, None))
    while pending:
        progress = []
        for e in sorted(pending):
            if t.rows[e[0]] >> e[1] & 1:
                continue
            if t.infects(*e):
                t.add(*e)
                progress.append(e)
                if goal == e:
                    return Graph(n, t.rows)
        if not progress:
            break
        src = 0
        for u, v in progress:
            src |= (1 << u) | (1 << v)
        if use_absorb:
            grown = _absorb_step(t, rule, W, progress)
            if grown != W:
                src |= grown
                W = grown
        near = ball_mask(t.rows, src, rule.radius)
        pending = set(_candidate_pairs(t.rows, n, rule, near))
    return Graph(n, t.rows)


def _greedy_clique(rows: Sequence[int], u: int, v: int) -> int:
    mask = (1 << u) | (1 << v)
    cand = rows[u] & rows[v]
    while cand:
        best, score = -1, -1
        for x in _bits(cand):
            c = (rows[x] & cand).bit_count()
            if c > score:
                best, score = x, c
        mask |= 1 << best
        cand &= rows[best]
    return mask


def _absorb_step(t: _Tester, rule: InfectionRule, W: int, progress: list[Edge], tries: int = 32) -> int:
    """Grow (or seed) the absorbed clique inside the tester's rows; returns the new mask."""
    rows = t.rows
    if W.bit_count() < rule.v - 1:
        for u, v in progress[:tries]:
            c = _greedy_clique(rows, u, v)
            if c.bit_count() > W.bit_count():
                W = c
        if W.bit_count() < rule.v - 1:
            return W
    old = W
    W, order = _absorb_rows(rows, len(rows), rule, W, check=True)
    if W != old or order:
        for x in _bits(W):
            rows[x] |= W & ~(1 << x)
            t.deg[x] = rows[x].bit_count()
    return W


def percolates(g: Graph, rule) -> bool:
    return closure(g, rule).is_complete()


def self_percolates(rule) -> bool:
    rule = _as_rule(rule)
    return percolates(rule.graph, rule)


def final_graph(g: Graph, rule) -> Graph:
    return closure(g, rule)


# ---------------------------------------------------------------------------
# Clique absorption
# ---------------------------------------------------------------------------


def absorption_witness(rule: InfectionRule, rows: Sequence[int], clique_mask: int, u: int, target: int) -> list[int]:
    """Embedding of H into ``rows`` + clique(W) + ``u target`` that uses ``u target``.

    A minimum-degree vertex x0 of H goes to ``u``, its neighbours to
    delta(H)-1 of u's neighbours in W plus ``target``, the rest of H into W.
    """
    h = rule.graph
    x0 = min(range(h.n), key=lambda v: (h.degree(v), v))
    hn = h.neighbors(x0)
    nbr_in_w = [x for x in _bits(rows[u] & clique_mask) if x != target][: len(hn) - 1]
    used = set(nbr_in_w) | {u, target}
    spare = [x for x in _bits(clique_mask) if x not in used]
    image = [0] * h.n
    image[x0] = u
    for y, x in zip(hn, nbr_in_w + [target]):
        image[y] = x
    rest = [v for v in range(h.n) if v != x0 and v not in hn]
    for y, x in zip(rest, spare):
        image[y] = x
    return image


def _check_absorption(rule, rows, clique_mask, u, target, image) -> bool:
    if len(set(image)) != rule.v:
        return False
    for a, b in rule.graph.edges():
        x, y = image[a], image[b]
        if {x, y} == {u, target}:
            continue
        both_in_w = clique_mask >> x & 1 and clique_mask >> y & 1
        if not (both_in_w or rows[x] >> y & 1):
            return False
    return True


def absorb_into_clique(g: Graph, rule, seed_clique: Iterable[int], check: bool = True) -> tuple[int, list[int]]:
    """Grow a clique of the final graph by the absorption law.

    If W is a clique of final(g) with |W| >= v(H)-1 and u has delta(H)-1
    g-neighbours in W, then W + u is a clique of final(g).  Returns the
    final mask of W and the absorption order.  With ``check`` each step is
    backed by an explicit embedding (``absorption_witness``).
    Rules with isolated vertices are refused (the law needs delta >= 1).
    """
    rule = _as_rule(rule)
    if rule.min_degree < 1:
        raise GraphInputError("clique absorption needs a rule without isolated vertices")
    W = 0
    for x in seed_clique:
        W |= 1 << x
    return _absorb_rows(g.rows, g.n, rule, W, check)


def _absorb_rows(rows: Sequence[int], n: int, rule: InfectionRule, W: int, check: bool) -> tuple[int, list[int]]:
    if W.bit_count() < rule.v - 1:
        return W, []
    need = rule.min_degree - 1
    cnt = [(r & W).bit_count() for r in rows]
    stack = [u for u in range(n) if not W >> u & 1 and cnt[u] >= need]
    order = []
    while stack:
        u = stack.pop()
        if W >> u & 1:
            continue
        if check:
            outside = W & ~rows[u]
            if outside:
                target = (outside & -outside).bit_length() - 1
                image = absorption_witness(rule, rows, W, u, target)
                if not _check_absorption(rule, rows, W, u, target, image):
                    raise AssertionError(f"absorption witness failed for vertex {u}")
        W |= 1 << u
        order.append(u)
        for x in _bits(rows[u]):
            if not W >> x & 1:
                cnt[x] += 1
                if cnt[x] == need:
                    stack.append(x)
    return W, order


# ---------------------------------------------------------------------------
# Sparse hosts: adjacency sets, local searches on small balls
# ---------------------------------------------------------------------------
#
# Bitset rows cost O(n^2) memory, which rules out hosts with 10^5+ vertices.
# For a connected rule every copy of H through a pair xy lies inside a small
# ball around {x, y}, so the search can run on the induced ball instead.


def _locality(rule: InfectionRule) -> tuple[int, int]:
    """(ball radius around a candidate pair, radius around a new edge).

    The first bounds min(dist(a, w), dist(b, w)) over vertices w of H - ab;
    the second bounds the distance from an endpoint of ab to any other edge
    of H - ab, so a pair made infectable by a new edge xy sits near xy.
    """
    h = rule.graph
    ball_r = edge_r = 0
    for an in rule.anchors:
        a, b = an.edge
        minus = h.remove_edges([(a, b)])
        da = bfs_distances(minus, [a])
        db = bfs_distances(minus, [b])
        for w in range(h.n):
            ball_r = max(ball_r, min(da.get(w, 0), db.get(w, 0)))
        for c, d in minus.edges():
            for dz in (da, db):
                edge_r = max(edge_r, min(dz[c], dz[d]))
    return ball_r, edge_r


def _sparse_ready(rule: InfectionRule):
    if not rule.connected or rule.has_bridge_anchor:
        raise GraphInputError("sparse checks need a connected rule without bridges")
    if rule.e == 1:
        raise GraphInputError("sparse checks need a rule with at least two edges")


def _ball(adj: Sequence[set], sources, radius: int) -> list[int]:
    seen = set(sources)
    front = list(seen)
    for _ in range(radius):
        nxt = []
        for v in front:
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        front = nxt
    return sorted(seen)


class SparseTester:
    """Infection queries on an adjacency-set host, one local search per pair.

    ``clique`` is an optional implicit clique: pairs inside it count as
    edges without being stored (used by the absorbing closure).
    """

    def __init__(self, adj: list[set], rule: InfectionRule):
        _sparse_ready(rule)
        self.adj = adj
        self.rule = rule
        self.ball_r, self.edge_r = _locality(rule)
        self.min_common = min(an.common for an in rule.anchors)
        self.reach = int(rule.reach)
        self.clique: set = set()

    def add(self, u: int, v: int):
        self.adj[u].add(v)
        self.adj[v].add(u)

    def has(self, u: int, v: int) -> bool:
        return v in self.adj[u] or (u in self.clique and v in self.clique)

    def prefilter(self, x: int, y: int) -> bool:
        return len(self.adj[x] & self.adj[y]) >= self.min_common

    def witness(self, x: int, y: int) -> list[int] | None:
        adj, clique = self.adj, self.clique
        verts = _ball(adj, (x, y), self.ball_r)
        idx = {v: i for i, v in enumerate(verts)}
        cmask = 0
        for v in verts:
            if v in clique:
                cmask |= 1 << idx[v]
        rows = []
        for i, v in enumerate(verts):
            r = 0
            for u in adj[v]:
                j = idx.get(u)
                if j is not None:
                    r |= 1 << j
            if cmask >> i & 1:
                r |= cmask & ~(1 << i)
            rows.append(r)
        t = _Tester(Graph(len(verts), tuple(rows)), self.rule)
        hit = t.witness(idx[x], idx[y])
        return None if hit is None else [verts[i] for i in hit]

    def partners(self, x: int):
        """Vertices y > x worth pairing with x (not adjacent, close enough)."""
        adj = self.adj
        if self.min_common >= 1:
            # at least min_common common neighbours: count 2-paths
            cnt = Counter(itertools.chain.from_iterable(adj[w] for w in adj[x]))
            ys = [y for y, c in cnt.items() if c >= self.min_common]
        else:
            ys = _ball(adj, (x,), self.reach)
        return [y for y in ys if y > x and not self.has(x, y)]

    def pairs_near(self, sources, radius: int):
        """Candidate pairs inside ``ball(sources, radius)``."""
        zone = _ball(self.adj, sources, radius)
        inside = set(zone)
        for x in zone:
            for y in self.partners(x):
                if y in inside:
                    yield x, y

    def all_pairs(self):
        for x in range(len(self.adj)):
            for y in self.partners(x):
                yield x, y


def adjacency(n: int, edges: Iterable[Edge]) -> list[set]:
    adj: list[set] = [set() for _ in range(n)]
    for u, v in edges:
        if u == v:
            raise GraphInputError(f"self-loop at {u}")
        adj[u].add(v)
        adj[v].add(u)
    return adj


def sparse_is_stable(adj: list[set], rule) -> bool:
    """No non-edge of the adjacency-set host is infected."""
    t = SparseTester([set(s) for s in adj], _as_rule(rule))
    return not any(t.prefilter(x, y) and t.witness(x, y) is not None for x, y in t.all_pairs())


def sparse_run_process(adj: list[set], rule, max_rounds: int) -> tuple[list[frozenset], bool]:
    """Synchronous rounds on an adjacency-set host, at most ``max_rounds``.

    Returns the rounds and whether the process was cut off (another round
    would have added edges).
    """
    t = SparseTester([set(s) for s in adj], _as_rule(rule))
    rounds: list[frozenset] = []
    cands = set(t.all_pairs())
    while True:
        new = []
        for x, y in sorted(cands):
            if t.prefilter(x, y) and t.witness(x, y) is not None:
                new.append((x, y))
        if not new:
            return rounds, False
        if len(rounds) >= max_rounds:
            return rounds, True
        for e in new:
            t.add(*e)
        rounds.append(frozenset(new))
        src = {v for e in new for v in e}
        cands = set(t.pairs_near(src, t.edge_r))


def sparse_closure(adj: list[set], rule, target: Edge | None = None, absorb: bool = False):
    """Worklist closure on an adjacency-set host.

    Returns ``(adjacency, infected pairs in order, clique)``; with
    ``target`` it stops once that pair is infected.  With ``absorb`` a
    clique of v(H)-1 vertices, once present, is grown by the absorption law
    and kept implicit (its internal pairs are not stored), so dense
    outcomes stay cheap.  The clique spans every vertex iff percolation was
    established; local searches only see stored edges plus the clique, so
    a smaller clique leaves the question open (see ``sparse_percolates``).
    """
    rule = _as_rule(rule)
    t = SparseTester([set(s) for s in adj], rule)
    goal = norm_edge(*target) if target is not None else None
    need = rule.min_degree - 1
    absorb = absorb and rule.min_degree >= 1
    W = t.clique
    cnt: dict = {}

    def join(u):
        W.add(u)
        stack = [u]
        while stack:
            z = stack.pop()
            for x in t.adj[z]:
                if x not in W:
                    cnt[x] = cnt.get(x, 0) + 1
                    if cnt[x] >= need:
                        W.add(x)
                        stack.append(x)

    def seed(x, y):
        clique = {x, y}
        cand = t.adj[x] & t.adj[y]
        while cand:
            best = max(cand, key=lambda z: (len(t.adj[z] & cand), -z))
            clique.add(best)
            cand &= t.adj[best]
        if len(clique) >= rule.v - 1:
            if need <= 0:
                W.update(range(len(t.adj)))
                return
            for z in clique:
                W.add(z)
            for z in clique:
                for x2 in t.adj[z]:
                    if x2 not in W:
                        cnt[x2] = cnt.get(x2, 0) + 1
            for x2 in [x2 for x2, c in cnt.items() if c >= need and x2 not in W]:
                if x2 not in W:
                    join(x2)

    heap = [e for e in t.all_pairs() if t.prefilter(*e)]
    heapq.heapify(heap)
    queued = set(heap)
    order: list[Edge] = []
    while heap:
        e = heapq.heappop(heap)
        queued.discard(e)
        x, y = e
        if t.has(x, y) or not t.prefilter(x, y) or t.witness(x, y) is None:
            continue
        t.add(x, y)
        order.append(e)
        if e == goal:
            break
        if absorb:
            if len(W) < rule.v - 1:
                seed(x, y)
            else:
                for a, b in ((x, y), (y, x)):
                    if a in W and b not in W:
                        cnt[b] = cnt.get(b, 0) + 1
                        if cnt[b] >= need:
                            join(b)
            if len(W) == len(t.adj):
                break
        for p in t.pairs_near((x, y), t.edge_r):
            if p not in queued and t.prefilter(*p):
                queued.add(p)
                heapq.heappush(heap, p)
    return t.adj, order, W


def sparse_percolates(adj: list[set], rule) -> bool | None:
    """True when the absorbing sparse closure absorbs every vertex, None otherwise.

    None means undetermined, not "does not percolate": the local searches
    do not see implicit clique edges outside a pair's stored ball.
    """
    rule = _as_rule(rule)
    n = len(adj)
    _, _, W = sparse_closure(adj, rule, absorb=True)
    if len(W) == n:
        return True
    return None


def sparse_absorb(adj: Sequence[set], rule, seed_clique: Iterable[int], check: bool = True) -> tuple[set, list[int]]:
    """``absorb_into_clique`` for adjacency-set hosts (the seed is an implicit clique)."""
    rule = _as_rule(rule)
    if rule.min_degree < 1:
        raise GraphInputError("clique absorption needs a rule without isolated vertices")
    W = set(seed_clique)
    if len(W) < rule.v - 1:
        return W, []
    h = rule.graph
    x0 = min(range(h.n), key=lambda v: (h.degree(v), v))
    hn = h.neighbors(x0)
    rest = [v for v in range(h.n) if v != x0 and v not in hn]
    need = rule.min_degree - 1
    cnt = {u: len(adj[u] & W) for u in range(len(adj)) if u not in W}
    stack = [u for u, c in cnt.items() if c >= need]
    order = []
    while stack:
        u = stack.pop()
        if u in W:
            continue
        if check:
            target = next((x for x in W if x not in adj[u]), None)
            if target is not None:
                nb = [x for x in adj[u] if x in W and x != target][: len(hn) - 1]
                used = set(nb) | {u, target}
                spare = []
                for x in W:
                    if len(spare) == len(rest):
                        break
                    if x not in used:
                        spare.append(x)
                image = [0] * h.n
                image[x0] = u
                for y, x in zip(hn, nb + [target]):
                    image[y] = x
                for y, x in zip(rest, spare):
                    image[y] = x
                ok = len(set(image)) == h.n and all(
                    {image[a], image[b]} == {u, target}
                    or (image[a] in W and image[b] in W)
                    or image[b] in adj[image[a]]
                    for a, b in h.edges()
                )
                if not ok:
                    raise AssertionError(f"absorption witness failed for vertex {u}")
        W.add(u)
        order.append(u)
        for x in adj[u]:
            if x not in W:
                cnt[x] += 1
                if cnt[x] == need:
                    stack.append(x)
    return W, order
