"""Chains of rule copies: simple clique chains, the dilation K5 assembly and
ladder K6 chains, plus a plain-text chain document format."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..engine import InfectionRule
from ..graphcore import Edge, Embedding, Graph, GraphInputError, build_graph, complete_graph, norm_edge


class ConstructionError(ValueError):
    """A builder could not produce a well-formed object."""


@dataclass
class Chain:
    """Copies ``H_1..H_tau`` of the rule with designated edges ``e_1..e_tau``.

    ``copies[i]`` is an Embedding of the rule graph into ``range(n)``.
    """

    rule: InfectionRule
    n: int
    copies: list[Embedding]
    designated: list[Edge]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.designated = [norm_edge(*e) for e in self.designated]
        if len(self.copies) != len(self.designated):
            raise ConstructionError("a chain needs one designated edge per copy")
        sets = [c.edge_image(self.rule.graph) for c in self.copies]
        for i, e in enumerate(self.designated):
            if e not in sets[i]:
                raise ConstructionError(f"designated edge {e} is not an edge of copy {i + 1}")
            if i + 1 < len(sets) and e not in sets[i + 1]:
                raise ConstructionError(f"designated edge {e} is not an edge of copy {i + 2}")
        self._edge_sets = sets
        edges = set().union(*sets) if sets else set()
        self.underlying = build_graph(self.n, edges)
        self.starting = self.underlying.remove_edges(self.designated)

    @property
    def length(self) -> int:
        return len(self.copies)

    def copy_edges(self, i: int) -> frozenset:
        """Edge set of copy ``i`` (0-based)."""
        return self._edge_sets[i]

    def copy_vertices(self, i: int) -> tuple[int, ...]:
        return self.copies[i].image

    def to_text(self) -> str:
        lines = [f"rule {self.rule.name}", f"n {self.n}", f"length {self.length}"]
        for emb, (u, v) in zip(self.copies, self.designated):
            lines.append("copy " + " ".join(map(str, emb.image)) + f" ; {u} {v}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, rule: InfectionRule) -> "Chain":
        n = None
        copies, designated = [], []
        for raw in text.splitlines():
            line = raw.strip()
            if line.startswith("n "):
                n = int(line.split()[1])
            elif line.startswith("copy "):
                verts, edge = line[5:].split(";")
                copies.append(Embedding(tuple(int(x) for x in verts.split())))
                u, v = (int(x) for x in edge.split())
                designated.append((u, v))
        if n is None:
            raise ConstructionError("chain document lacks an 'n' line")
        return cls(rule, n, copies, designated)


def _clique_rule(k: int) -> InfectionRule:
    return InfectionRule(complete_graph(k), f"clique {k}")


# ---------------------------------------------------------------------------
# Simple clique chains
# ---------------------------------------------------------------------------


def simple_clique_chain(k: int, d: int, rule: InfectionRule | None = None) -> Chain:
    """Copy ``i`` (1-based) occupies vertices ``(i-1)(k-2) .. i(k-2)+1``.

    Consecutive copies share the pair ``e_i``; ``e_d`` is the last pair of
    the final copy, disjoint from ``e_{d-1}``.  With ``rule`` given, the copies
    are embeddings of an arbitrary k-vertex rule whose vertices 0, 1 and
    k-2, k-1 are adjacent pairs (the shared pairs).
    """
    if k < 3 or d < 1:
        raise GraphInputError("simple clique chains need k >= 3 and d >= 1")
    rule = rule or _clique_rule(k)
    if rule.v != k:
        raise GraphInputError("rule size does not match k")
    n = (k - 2) * d + 2
    copies, designated = [], []
    for i in range(1, d + 1):
        base = (i - 1) * (k - 2)
        verts = tuple(range(base, base + k))
        copies.append(Embedding(verts))
        designated.append((verts[-2], verts[-1]))
    return Chain(rule, n, copies, designated, {"kind": "simple", "k": k})


# ---------------------------------------------------------------------------
# Dilation K5 assembly
# ---------------------------------------------------------------------------


def _dilation_copies(p: int, a: int, tau0: int) -> tuple[list[tuple[int, ...]], list[Edge], Edge]:
    """Vertex tuples (Z_p labels), designated pairs and the entry pair f_0."""
    verts, des = [], []
    for i in range(1, tau0 + 1):
        labels = tuple(a * (3 * i + t) % p for t in (-2, -1, 0, 1, 2))
        verts.append(labels)
        des.append((labels[3], labels[4]))
    return verts, des, (a % p, 2 * a % p)


def dilation_k5_assembly(p: int, dset) -> Chain:
    """Dilation chains for ``a_1..a_q`` joined by 3-copy linking chains.

    Vertex ``w_x`` (x in 1..p-1) is ambient vertex ``x - 1``; linking chain
    ``j`` adds 7 fresh vertices numbered from ``p - 1 + 7(j - 1)``.
    """
    if not getattr(dset, "verified", False):
        raise ConstructionError("dilation assembly needs a verified solution-free set")
    if dset.p != p:
        raise GraphInputError(f"set modulus {dset.p} differs from p={p}")
    elements = list(dset.elements)
    q = len(elements)
    if q == 0:
        raise GraphInputError("empty dilation set")
    tau0 = (p - 3) // 3
    if tau0 < 1:
        raise GraphInputError("p too small for a dilation chain")
    rule = _clique_rule(5)

    def w(x: int) -> int:
        return x - 1

    copies: list[tuple[int, ...]] = []
    designated: list[Edge] = []
    fresh = p - 1
    segments = []
    for j, a in enumerate(elements):
        verts, des, entry = _dilation_copies(p, a, tau0)
        if j > 0:
            # link f^{j-1}_{tau0} (last designated edge) to f^j_0
            x1, x2 = designated[-1]
            y1, y2 = w(entry[0]), w(entry[1])
            if {x1, x2} & {y1, y2}:
                raise ConstructionError(f"linking chain {j} is not simple: {(x1, x2)} meets {(y1, y2)}")
            n1 = list(range(fresh, fresh + 7))
            fresh += 7
            g1 = (n1[0], n1[1])
            g2 = (n1[3], n1[4])
            g3 = (y1, y2)
            link = [
                ((x1, x2) + g1 + (n1[2],), g1),
                (g1 + g2 + (n1[5],), g2),
                (g2 + g3 + (n1[6],), g3),
            ]
            start = len(copies)
            for vs, g in link:
                copies.append(vs)
                designated.append(g)
            segments.append(("link", start, len(copies)))
        start = len(copies)
        for vs, (x, y) in zip(verts, des):
            copies.append(tuple(w(t) for t in vs))
            designated.append((w(x), w(y)))
        segments.append(("dilation", start, len(copies), a))
    n = fresh
    meta = {"kind": "dilation", "p": p, "elements": elements, "tau0": tau0, "segments": segments}
    return Chain(rule, n, [Embedding(c) for c in copies], designated, meta)


def dilation_layer_graphs(p: int, elements: Sequence[int]) -> list[frozenset]:
    """Edge sets of the per-dilation underlying graphs (on labels 1..p-1)."""
    tau0 = (p - 3) // 3
    out = []
    for a in elements:
        verts, _, _ = _dilation_copies(p, a, tau0)
        es = set()
        for vs in verts:
            es |= {norm_edge(x, y) for x in vs for y in vs if x != y}
        out.append(frozenset(es))
    return out


# ---------------------------------------------------------------------------
# Ladder K6 chains
# ---------------------------------------------------------------------------


def ladder_k6_chain(segment_length: int, slope_count: int, slopes: Sequence[int] | None = None, verify: bool = True) -> Chain:
    """Simple K6-chains on two triangle tracks joined by linking chains.

    Left track vertices ``L_0..L_{2T}`` carry triangles ``(L_{2t}, L_{2t+1},
    L_{2t+2})``; the right track likewise.  The slope-``a`` chain pairs left
    triangle ``t`` with right triangle ``t + a`` (complete bipartite between
    them); its designated edges are ``L_{2i} R_{2(i+a)}`` and its entry edge is
    ``L_0 R_{2a}``.  Default slopes are ``0, 4, 8, ...``.  Conditions (dagger')
    and (star) are checked unless ``verify`` is false.
    """
    if segment_length < 1 or slope_count < 1:
        raise GraphInputError("segment_length and slope_count must be positive")
    slopes = list(slopes) if slopes is not None else [4 * j for j in range(slope_count)]
    if len(slopes) != slope_count:
        raise GraphInputError("slope list length differs from slope_count")
    T = segment_length
    right_tris = T + max(slopes)
    n_left = 2 * T + 1
    n_right = 2 * right_tris + 1

    def L(x):
        return x

    def R(x):
        return n_left + x

    fresh = n_left + n_right
    copies: list[tuple[int, ...]] = []
    designated: list[Edge] = []
    segments = []
    for j, a in enumerate(slopes):
        if j > 0:
            x1, x2 = designated[-1]
            y1, y2 = L(0), R(2 * a)
            # a shared endpoint would let one vertex see both ends of a
            # three-copy link, so use one more intermediate copy then
            hops = 3 if {x1, x2}.isdisjoint((y1, y2)) else 4
            gates = [(x1, x2)]
            link = []
            for h in range(hops):
                if h == hops - 1:
                    g = (y1, y2)
                    pad = (fresh, fresh + 1)
                    fresh += 2
                else:
                    g = (fresh, fresh + 1)
                    pad = (fresh + 2, fresh + 3)
                    fresh += 4
                link.append((gates[-1] + g + pad, g))
                gates.append(g)
            start = len(copies)
            for vs, g in link:
                copies.append(vs)
                designated.append(g)
            segments.append(("link", start, len(copies)))
        start = len(copies)
        for i in range(1, T + 1):
            t = i - 1
            left = (L(2 * t), L(2 * t + 1), L(2 * t + 2))
            right = (R(2 * (t + a)), R(2 * (t + a) + 1), R(2 * (t + a) + 2))
            # order so the designated pair sits at positions 4, 5
            copies.append(left[:2] + right[:2] + (left[2], right[2]))
            designated.append((L(2 * i), R(2 * (i + a))))
        segments.append(("ladder", start, len(copies), a))
    meta = {"kind": "ladder", "segment_length": T, "slopes": slopes, "segments": segments}
    chain = Chain(_clique_rule(6), fresh, [Embedding(c) for c in copies], designated, meta)
    if verify:
        from ..analyzers import verify_chain_conditions

        report = verify_chain_conditions(chain, {"dagger_prime", "star"})
        if not report.passed:
            raise ChainVerificationError(report)
    return chain


class ChainVerificationError(ConstructionError):
    def __init__(self, report):
        super().__init__(f"chain conditions failed: {report.summary()}")
        self.report = report
