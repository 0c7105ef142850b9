"""Property checkers and brute-force oracles built on the engine."""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from statistics import NormalDist
from typing import Callable, Iterable

import numpy as np

from .engine import InfectionRule, _as_rule, percolates, run_process
from .graphcore import (
    Edge,
    Graph,
    build_graph,
    encode_graph6,
    enumerate_nonisomorphic,
    find_embedding,
    is_connected,
    iter_embeddings,
    norm_edge,
)

UNKNOWN = "unknown"


class InternalConsistencyError(RuntimeError):
    """A result contradicts a proven statement; indicates an engine bug."""


# ---------------------------------------------------------------------------
# Inseparability
# ---------------------------------------------------------------------------


def _connected_after(h: Graph, drop_vertices: Iterable[int], drop_edge: Edge | None) -> bool:
    keep = [v for v in range(h.n) if v not in set(drop_vertices)]
    if len(keep) <= 1:
        return True
    sub = h.induced(keep)
    if drop_edge is not None:
        idx = {v: i for i, v in enumerate(keep)}
        u, v = drop_edge
        if u in idx and v in idx:
            sub = sub.remove_edges([(idx[u], idx[v])])
    return is_connected(sub)


def separation_witness(h: Graph, ell: int):
    """A (vertex set, edge or None) whose deletion disconnects ``h``, if any."""
    edges = [None] + h.edges()
    for size in range(ell + 1):
        for drop in itertools.combinations(range(h.n), size):
            for e in edges:
                if e is not None and (e[0] in drop or e[1] in drop):
                    continue
                if not _connected_after(h, drop, e):
                    return drop, e
    return None


def is_l1_inseparable(h: Graph, ell: int = 2) -> bool:
    """No deletion of at most ``ell`` vertices plus at most one edge disconnects ``h``.

    Isolated vertices left behind count as separate components.
    """
    if isinstance(h, InfectionRule):
        h = h.graph
    return separation_witness(h, ell) is None


# ---------------------------------------------------------------------------
# Behrendian colourings
# ---------------------------------------------------------------------------


def _cycles_as_edge_lists(f: Graph) -> list[list[int]]:
    """Every cycle of ``f`` as a cyclic list of edge indices (each cycle once)."""
    eidx = {e: i for i, e in enumerate(f.edges())}
    out = []
    seen = set()
    n = f.n
    for start in range(n):
        # cycles whose smallest vertex is `start`
        stack = [(start, [start])]
        while stack:
            v, path = stack.pop()
            for w in f.neighbors(v):
                if w == start and len(path) >= 3:
                    key = frozenset(norm_edge(path[i], path[(i + 1) % len(path)]) for i in range(len(path)))
                    if key not in seen:
                        seen.add(key)
                        out.append([eidx[norm_edge(path[i], path[(i + 1) % len(path)])] for i in range(len(path))])
                elif w > start and w not in path:
                    stack.append((w, path + [w]))
    return out


def _set_partitions(m: int):
    """Restricted growth strings of length m (colourings up to renaming)."""
    if m == 0:
        yield ()
        return
    a = [0] * m

    def rec(i, mx):
        if i == m:
            yield tuple(a)
            return
        for c in range(mx + 2):
            a[i] = c
            yield from rec(i + 1, max(mx, c))

    yield from rec(1, 0)


def _colour_changes(cycle: list[int], colour) -> int:
    return sum(1 for i in range(len(cycle)) if colour[cycle[i]] != colour[cycle[i - 1]])


@dataclass
class BehrendianResult:
    verdict: object  # True, False or UNKNOWN
    counterexample: dict | None = None

    def __bool__(self):
        return self.verdict is True


def is_behrendian(f: Graph, edge_cap: int = 10) -> BehrendianResult:
    """Every non-monochromatic edge colouring has a non-monochromatic cycle made
    of two or three monochromatic paths (two or three colour changes around it).
    """
    edges = f.edges()
    m = len(edges)
    if m > edge_cap:
        return BehrendianResult(UNKNOWN)
    cycles = _cycles_as_edge_lists(f)
    for colour in _set_partitions(m):
        if max(colour, default=0) == 0:
            continue
        if not any(2 <= _colour_changes(c, colour) <= 3 for c in cycles):
            return BehrendianResult(False, {e: c for e, c in zip(edges, colour)})
    return BehrendianResult(True)


# ---------------------------------------------------------------------------
# Chain conditions
# ---------------------------------------------------------------------------

CONDITIONS = ("dagger", "dagger_prime", "star")


@dataclass
class ChainReport:
    checked: tuple
    passed_flags: dict
    witnesses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.passed_flags.values())

    def summary(self) -> str:
        parts = []
        for c in self.checked:
            s = f"{c}={'pass' if self.passed_flags[c] else 'fail'}"
            if c in self.witnesses:
                s += f" witness={self.witnesses[c]}"
            parts.append(s)
        return " ".join(parts)

    def to_text(self) -> str:
        return "\n".join(self.summary().split(" ")) + "\n"


def _star_witness(chain, cache: dict | None = None):
    """A copy of H-minus-an-edge in the underlying graph not inside one copy."""
    rule = chain.rule
    g = chain.underlying
    copy_sets = [chain.copy_edges(i) for i in range(chain.length)]
    by_edge: dict = {}
    for i, s in enumerate(copy_sets):
        for e in s:
            by_edge.setdefault(e, []).append(i)
    for a, b in rule.orbits.representatives:
        pattern = rule.graph.remove_edges([(a, b)])
        seen = set()
        pedges = pattern.edges()
        for emb in iter_embeddings(pattern, g):
            im = emb.image
            es = frozenset(norm_edge(im[u], im[v]) for u, v in pedges)
            if es in seen:
                continue
            seen.add(es)
            first = next(iter(es))
            if not any(es <= copy_sets[i] for i in by_edge[first]):
                return sorted(es)
    return None


def verify_chain_conditions(chain, which: Iterable[str] = CONDITIONS) -> ChainReport:
    which = tuple(c for c in CONDITIONS if c in set(which))
    flags, wit = {}, {}
    sets = [chain.copy_edges(i) for i in range(chain.length)]
    des = chain.designated
    if "dagger" in which:
        flags["dagger"] = True
        owners: dict = {}
        for i, s in enumerate(sets):
            for e in s:
                owners.setdefault(e, []).append(i)
        for e, idx in sorted(owners.items()):
            if len(idx) == 1:
                continue
            ok = len(idx) == 2 and idx[1] == idx[0] + 1 and des[idx[0]] == e
            if not ok:
                flags["dagger"] = False
                wit["dagger"] = (idx[0] + 1, idx[1] + 1, e)
                break
    if "dagger_prime" in which:
        flags["dagger_prime"] = True
        for j, e in enumerate(des):
            bad = next((i for i in range(j) if e in sets[i]), None)
            if bad is not None:
                flags["dagger_prime"] = False
                wit["dagger_prime"] = (bad + 1, j + 1, e)
                break
    if "star" in which:
        w = _star_witness(chain)
        flags["star"] = w is None
        if w is not None:
            wit["star"] = w
    return ChainReport(which, flags, wit)


def replay_round_exact(chain) -> tuple[bool, object]:
    """Engine replay: round i adds exactly e_i for every i (and nothing else)."""
    trace = run_process(chain.starting, chain.rule, max_rounds=chain.length + 1)
    expected = [frozenset([e]) for e in chain.designated]
    ok = trace.rounds[: chain.length] == expected
    return ok, trace


# ---------------------------------------------------------------------------
# Odd-round extraction
# ---------------------------------------------------------------------------


def extract_alternating_witness(trace, rule) -> Graph:
    """Least new edge of each odd round; the result must be H-free."""
    rule = _as_rule(rule)
    if trace.tau < 1:
        raise ValueError("extraction needs a trace with at least one round")
    picked = [min(r) for i, r in enumerate(trace.rounds) if i % 2 == 0]
    g = build_graph(trace.start.n, picked)
    if find_embedding(rule.graph, g) is not None:
        raise InternalConsistencyError(f"odd-round extraction contains a copy of {rule.name}: {picked}")
    return g


# ---------------------------------------------------------------------------
# Exhaustive searches
# ---------------------------------------------------------------------------


@dataclass
class SearchResult:
    value: object
    witnesses: list
    examined: int
    wall_time: float
    n: int = 0

    def to_text(self) -> str:
        return f"n={self.n} value={self.value} examined={self.examined} witness={self.witnesses[0] if self.witnesses else ''}\n"


def _graphs(n: int, order: Callable | None):
    gs = list(enumerate_nonisomorphic(n))
    return order(gs) if order else gs


def brute_force_max_running_time(rule, n: int, order: Callable | None = None) -> SearchResult:
    """Exact M_H(n) over all isomorphism classes, with a canonical witness."""
    rule = _as_rule(rule)
    t0 = time.perf_counter()
    best, wit, count = -1, [], 0
    for g in _graphs(n, order):
        count += 1
        tau = run_process(g, rule).tau
        if tau > best:
            best, wit = tau, [g]
    return SearchResult(best, [encode_graph6(w) for w in wit], count, time.perf_counter() - t0, n)


def brute_force_weak_saturation(rule, n: int, order: Callable | None = None) -> SearchResult:
    """Minimum edge count of an n-vertex H-percolating graph."""
    rule = _as_rule(rule)
    t0 = time.perf_counter()
    count = 0
    best, wit = None, None
    for g in sorted(_graphs(n, order), key=lambda g: g.m):
        if best is not None and g.m >= best:
            break
        count += 1
        if percolates(g, rule):
            best, wit = g.m, g
    wits = [encode_graph6(wit)] if wit is not None else []
    return SearchResult(best, wits, count, time.perf_counter() - t0, n)


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------


def sample_gnp(n: int, p: float, rng: np.random.Generator) -> Graph:
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.shape[0]) < p
    return build_graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def wilson_interval(successes: int, trials: int, level: float = 0.95) -> tuple[float, float]:
    z = NormalDist().inv_cdf(0.5 + level / 2)
    phat = successes / trials
    den = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / den
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / den
    lo, hi = max(0.0, centre - half), min(1.0, centre + half)
    # the bounds are exactly 0 and 1 at the extremes; avoid rounding drift
    if successes == 0:
        lo = 0.0
    if successes == trials:
        hi = 1.0
    return lo, hi


@dataclass
class Estimate:
    p: float
    estimate: float
    lo: float
    hi: float
    trials: int
    level: float = 0.95


def _trial(rule, n, p, seed, i) -> bool:
    rng = np.random.default_rng(np.random.SeedSequence([seed, i]))
    return percolates(sample_gnp(n, p, rng), rule)


def percolation_probability(rule, n: int, p: float, trials: int, seed: int, jobs: int = 1) -> Estimate:
    """Fraction of seeded G(n, p) samples that percolate, with a 95% Wilson interval.

    Trial ``i`` draws from ``SeedSequence([seed, i])`` so the answer does not
    depend on ``jobs``.
    """
    rule = _as_rule(rule)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if jobs > 1:
        from joblib import Parallel, delayed

        hits = Parallel(n_jobs=jobs)(delayed(_trial)(rule, n, p, seed, i) for i in range(trials))
    else:
        hits = [_trial(rule, n, p, seed, i) for i in range(trials)]
    k = sum(hits)
    lo, hi = wilson_interval(k, trials)
    return Estimate(p, k / trials, lo, hi, trials)
