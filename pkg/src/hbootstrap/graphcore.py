"""Graph substrate: immutable bitset graphs, embedding search, edge orbits,
isomorphism-class enumeration, girth and text formats.

Adjacency is stored as one Python int per vertex (bit ``v`` of ``rows[u]`` set
iff ``uv`` is an edge).  All neighbourhood intersections are single ``&``
operations on these rows.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, int]

MAX_ENUM_N = 8


class GraphInputError(ValueError):
    """Raised for invalid vertex counts, endpoints, loops or parameters."""


class GraphFormatError(ValueError):
    """Raised when graph6 or edge-list text cannot be parsed."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Finite simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "rows", "_m", "_hash")

    def __init__(self, n: int, rows: Sequence[int]):
        self.n = n
        self.rows = tuple(rows)
        self._m = None
        self._hash = None

    # -- basic queries -------------------------------------------------
    @property
    def m(self) -> int:
        if self._m is None:
            self._m = sum(r.bit_count() for r in self.rows) // 2
        return self._m

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def edges(self) -> list[Edge]:
        out = []
        for u, r in enumerate(self.rows):
            for v in _bits(r >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def non_edges(self) -> list[Edge]:
        full = (1 << self.n) - 1
        out = []
        for u, r in enumerate(self.rows):
            miss = (full & ~r) >> (u + 1)
            for v in _bits(miss):
                out.append((u, u + 1 + v))
        return out

    def is_complete(self) -> bool:
        full = (1 << self.n) - 1
        return all(r | (1 << u) == full for u, r in enumerate(self.rows))

    # -- derived graphs ------------------------------------------------
    def add_edges(self, edges: Iterable[Edge]) -> "Graph":
        rows = list(self.rows)
        for u, v in edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, rows)

    def remove_edges(self, edges: Iterable[Edge]) -> "Graph":
        rows = list(self.rows)
        for u, v in edges:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, rows)

    def add_clique(self, vertices: Iterable[int]) -> "Graph":
        vs = list(vertices)
        mask = 0
        for v in vs:
            mask |= 1 << v
        rows = list(self.rows)
        for v in vs:
            rows[v] |= mask & ~(1 << v)
        return Graph(self.n, rows)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        rows = [0] * self.n
        for u, r in enumerate(self.rows):
            acc = 0
            for v in _bits(r):
                acc |= 1 << perm[v]
            rows[perm[u]] = acc
        return Graph(self.n, rows)

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, [full & ~r & ~(1 << u) for u, r in enumerate(self.rows)])

    def disjoint_union(self, other: "Graph") -> "Graph":
        s = self.n
        rows = list(self.rows) + [r << s for r in other.rows]
        return Graph(s + other.n, rows)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        return build_graph(
            len(vertices),
            [(index[u], index[v]) for u, v in self.edges() if u in index and v in index],
        )

    def with_vertices(self, extra: int) -> "Graph":
        return Graph(self.n + extra, list(self.rows) + [0] * extra)

    # -- dunder ----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.rows))
        return self._hash

    def __le__(self, other: "Graph") -> bool:
        """Edge-subgraph relation on the same vertex set."""
        return self.n == other.n and all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(vertex_count: int, edges: Iterable[Edge]) -> Graph:
    if vertex_count < 0:
        raise GraphInputError(f"negative vertex count {vertex_count}")
    rows = [0] * vertex_count
    for e in edges:
        u, v = e
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise GraphInputError(f"edge {e} has an endpoint outside [0, {vertex_count})")
        if u == v:
            raise GraphInputError(f"loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(vertex_count, rows)


def empty_graph(n: int) -> Graph:
    return Graph(n, [0] * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)])


# ---------------------------------------------------------------------------
# Embedding search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """Injective map from pattern vertices to host vertices (``image[p]``)."""

    image: tuple[int, ...]

    def edge_image(self, pattern: Graph) -> frozenset[Edge]:
        im = self.image
        return frozenset(norm_edge(im[u], im[v]) for u, v in pattern.edges())


class SearchPlan:
    """Pattern vertex order for backtracking, fixed by the anchor vertices.

    Each later vertex is the one with the most already-placed neighbours
    (ties: higher degree, then lower index).
    """

    __slots__ = ("order", "back", "pdeg", "prows", "p_n", "later_nbrs")

    def __init__(self, pattern: Graph, start: Sequence[int] = ()):
        p_n = pattern.n
        prows = pattern.rows
        pdeg = pattern.degrees()
        order = list(start)
        placed = 0
        for v in order:
            placed |= 1 << v
        while len(order) < p_n:
            best, key = -1, None
            for v in range(p_n):
                if placed >> v & 1:
                    continue
                k = ((prows[v] & placed).bit_count(), pdeg[v], -v)
                if key is None or k > key:
                    best, key = v, k
            order.append(best)
            placed |= 1 << best
        pos = {v: i for i, v in enumerate(order)}
        # back[i]: positions (< i) of pattern neighbours of order[i]
        self.back = tuple(
            tuple(sorted(pos[w] for w in _bits(prows[v]) if pos[w] < i))
            for i, v in enumerate(order)
        )
        # later_nbrs[i]: number of neighbours of order[i] placed after position i
        self.later_nbrs = tuple(
            sum(1 for w in _bits(prows[v]) if pos[w] > i) for i, v in enumerate(order)
        )
        self.order = tuple(order)
        self.pdeg = tuple(pdeg[v] for v in order)
        self.prows = prows
        self.p_n = p_n


def _search(plan: SearchPlan, rows, hdeg, allmask: int, fixed: Sequence[int]) -> Iterator[list[int]]:
    """Yield host images (indexed by plan position) extending ``fixed``.

    ``rows`` and ``hdeg`` are read lazily, so callers may patch them between
    searches (the engine toggles a candidate edge in place) but not while a
    search is being iterated.
    """
    p_n = plan.p_n
    back = plan.back
    pdeg = plan.pdeg
    img = [-1] * p_n
    # remaining[i]: pattern neighbours of position i not placed yet
    remaining = list(plan.later_nbrs)
    used = 0
    for t, h in enumerate(fixed):
        if pdeg[t] > hdeg[h] or used >> h & 1:
            return
        for j in back[t]:
            if not rows[img[j]] >> h & 1:
                return
            remaining[j] -= 1
        img[t] = h
        used |= 1 << h

    def feasible(depth: int, used_mask: int) -> bool:
        free = ~used_mask
        for i in range(depth):
            r = remaining[i]
            if r and (rows[img[i]] & free).bit_count() < r:
                return False
        return True

    if not feasible(len(fixed), used):
        return

    def rec(t: int, used_mask: int):
        if t == p_n:
            yield list(img)
            return
        bi = back[t]
        if bi:
            c = rows[img[bi[0]]]
            for j in bi[1:]:
                c &= rows[img[j]]
        else:
            c = allmask
        c &= ~used_mask
        need = pdeg[t]
        while c:
            low = c & -c
            c ^= low
            h = low.bit_length() - 1
            if hdeg[h] < need:
                continue
            img[t] = h
            for j in bi:
                remaining[j] -= 1
            nxt = used_mask | low
            if feasible(t + 1, nxt):
                yield from rec(t + 1, nxt)
            for j in bi:
                remaining[j] += 1
        img[t] = -1

    yield from rec(len(fixed), used)


def _to_embedding(plan: SearchPlan, images: list[int]) -> Embedding:
    out = [0] * plan.p_n
    for pos, v in enumerate(plan.order):
        out[v] = images[pos]
    return Embedding(tuple(out))


def iter_embeddings(pattern: Graph, host: Graph, fixed: dict[int, int] | None = None) -> Iterator[Embedding]:
    """All embeddings of ``pattern`` into ``host`` extending ``fixed``."""
    fixed = fixed or {}
    plan = SearchPlan(pattern, list(fixed))
    start = [fixed[v] for v in plan.order[: len(fixed)]]
    rows = host.rows
    hdeg = host.degrees()
    allmask = (1 << host.n) - 1
    if pattern.n > host.n:
        return
    for images in _search(plan, rows, hdeg, allmask, start):
        yield _to_embedding(plan, images)


def find_embedding(
    pattern: Graph,
    host: Graph,
    anchor: tuple[Edge, Edge] | None = None,
) -> Embedding | None:
    """Non-induced embedding of ``pattern`` into ``host``.

    ``anchor = ((a, b), (x, y))`` forces ``{a, b}`` onto ``{x, y}`` in either
    orientation.  The host pair must be an edge of ``host`` whenever ``ab`` is a
    pattern edge; to test whether a non-edge would complete a copy, pass
    ``host.add_edges([(x, y)])``.
    """
    if pattern.n > host.n:
        return None
    if anchor is None:
        return next(iter_embeddings(pattern, host), None)
    (a, b), (x, y) = anchor
    if a == b or x == y:
        raise GraphInputError("anchor pairs need two distinct vertices")
    for fx, fy in ((x, y), (y, x)):
        emb = next(iter_embeddings(pattern, host, {a: fx, b: fy}), None)
        if emb is not None:
            return emb
    return None


def is_embedding(pattern: Graph, host: Graph, emb: Embedding) -> bool:
    im = emb.image
    if len(im) != pattern.n or len(set(im)) != pattern.n:
        return False
    return all(host.has_edge(im[u], im[v]) for u, v in pattern.edges())


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return find_embedding(g, h) is not None


# ---------------------------------------------------------------------------
# Edge orbits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeOrbitPartition:
    """Rule edges split into automorphism orbits.

    ``witness[e]`` is an automorphism (as an image tuple) carrying the orbit
    representative onto ``e``; ``reversible[i]`` says whether some
    automorphism swaps the endpoints of representative ``i``.
    """

    orbits: tuple[tuple[Edge, ...], ...]
    witness: dict
    reversible: tuple[bool, ...]

    @property
    def representatives(self) -> tuple[Edge, ...]:
        return tuple(o[0] for o in self.orbits)

    def exchange(self, e: Edge, f: Edge) -> tuple[int, ...]:
        """An automorphism mapping edge ``e`` onto edge ``f`` (same orbit)."""
        se, sf = self.witness[e], self.witness[f]
        inv = [0] * len(se)
        for v, w in enumerate(se):
            inv[w] = v
        # sf o se^{-1}
        return tuple(sf[inv[v]] for v in range(len(se)))


def _automorphism_mapping(rule: Graph, src: Edge, dst: Edge) -> tuple[int, ...] | None:
    a, b = src
    for x, y in (dst, dst[::-1]):
        emb = next(iter_embeddings(rule, rule, {a: x, b: y}), None)
        if emb is not None:
            return emb.image
    return None


def edge_orbits(rule: Graph) -> EdgeOrbitPartition:
    edges = rule.edges()
    if not edges:
        raise GraphInputError("edge orbits need a rule with at least one edge")
    orbits: list[list[Edge]] = []
    witness: dict = {}
    identity = tuple(range(rule.n))
    degs = rule.degrees()
    for e in edges:
        placed = False
        for orb in orbits:
            r = orb[0]
            if sorted((degs[r[0]], degs[r[1]])) != sorted((degs[e[0]], degs[e[1]])):
                continue
            sigma = _automorphism_mapping(rule, r, e)
            if sigma is not None:
                orb.append(e)
                witness[e] = sigma
                placed = True
                break
        if not placed:
            orbits.append([e])
            witness[e] = identity
    reversible = []
    for orb in orbits:
        a, b = orb[0]
        emb = next(iter_embeddings(rule, rule, {a: b, b: a}), None)
        reversible.append(emb is not None)
    return EdgeOrbitPartition(tuple(tuple(o) for o in orbits), witness, tuple(reversible))


# ---------------------------------------------------------------------------
# Canonical labelling and enumeration
# ---------------------------------------------------------------------------


def _refine(rows: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement of an ordered partition (deterministic)."""
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        new_cells: list[list[int]] = []
        changed = False
        for c in cells:
            if len(c) == 1:
                new_cells.append(c)
                continue
            sig = {v: tuple((rows[v] & m).bit_count() for m in masks) for v in c}
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                new_cells.append(c)
                continue
            changed = True
            for k in keys:
                new_cells.append([v for v in c if sig[v] == k])
        cells = new_cells
        if not changed:
            return cells


def _code(rows: Sequence[int], order: Sequence[int]) -> int:
    """Upper-triangle adjacency bits of the graph relabelled by ``order``."""
    n = len(order)
    code = 0
    for j in range(1, n):
        rj = rows[order[j]]
        for i in range(j):
            code = (code << 1) | (rj >> order[i] & 1)
    return code


def canonical_form(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Return ``(code, order)``: the canonical code and a vertex order attaining it.

    Individualisation-refinement over equitable partitions; the largest leaf
    code wins.  Twins inside the branching cell are automorphic, so only one
    of each twin class is individualised.
    """
    n = g.n
    rows = g.rows
    if n <= 1:
        return 0, tuple(range(n))
    best: list = [-1, ()]

    def visit(cells: list[list[int]]):
        cells = _refine(rows, cells)
        idx = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if idx is None:
            order = [c[0] for c in cells]
            code = _code(rows, order)
            if code > best[0]:
                best[0], best[1] = code, tuple(order)
            return
        cell = cells[idx]
        tried: list[int] = []
        for v in cell:
            if any(_twins(rows, v, w) for w in tried):
                continue
            tried.append(v)
            rest = [w for w in cell if w != v]
            visit(cells[:idx] + [[v], rest] + cells[idx + 1 :])

    visit([list(range(n))])
    return best[0], best[1]


def _twins(rows: Sequence[int], v: int, w: int) -> bool:
    bv, bw = 1 << v, 1 << w
    return (rows[v] & ~bw) == (rows[w] & ~bv)


def canonical_graph(g: Graph) -> Graph:
    _, order = canonical_form(g)
    perm = [0] * g.n
    for new, old in enumerate(order):
        perm[old] = new
    return g.relabel(perm)


def canonical_key(g: Graph) -> tuple[int, int]:
    return (g.n, canonical_form(g)[0])


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (empty_graph(0),)
    if n == 1:
        return (empty_graph(1),)
    seen: dict[int, Graph] = {}
    for parent in _classes(n - 1):
        base = list(parent.rows) + [0]
        for s in range(1 << (n - 1)):
            rows = list(base)
            rows[n - 1] = s
            for v in _bits(s):
                rows[v] |= 1 << (n - 1)
            g = Graph(n, rows)
            code, order = canonical_form(g)
            if code not in seen:
                seen[code] = g
    out = []
    for code, g in seen.items():
        out.append((g.m, code, canonical_graph(g)))
    out.sort(key=lambda t: (t[0], t[1]))
    return tuple(t[2] for t in out)


def enumerate_nonisomorphic(n: int) -> Iterator[Graph]:
    """One canonical representative per isomorphism class on ``n`` vertices.

    Ordered by edge count, then canonical code.
    """
    if not 1 <= n <= MAX_ENUM_N:
        raise GraphInputError(f"enumeration supports 1 <= n <= {MAX_ENUM_N}, got {n}")
    return iter(_classes(n))


# ---------------------------------------------------------------------------
# Distances and girth
# ---------------------------------------------------------------------------


def bfs_distances(g: Graph, sources: Iterable[int], limit: int | None = None) -> dict[int, int]:
    dist = {}
    frontier = 0
    for s in sources:
        dist[s] = 0
        frontier |= 1 << s
    seen = frontier
    d = 0
    while frontier and (limit is None or d < limit):
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.rows[v]
        nxt &= ~seen
        d += 1
        for v in _bits(nxt):
            dist[v] = d
        seen |= nxt
        frontier = nxt
    return dist


def ball_mask(rows: Sequence[int], sources_mask: int, radius: int) -> int:
    seen = frontier = sources_mask
    for _ in range(radius):
        nxt = 0
        for v in _bits(frontier):
            nxt |= rows[v]
        nxt &= ~seen
        if not nxt:
            break
        seen |= nxt
        frontier = nxt
    return seen


def set_distance(g: Graph, a: Iterable[int], b: Iterable[int]) -> float:
    target = set(b)
    dist = bfs_distances(g, a)
    ds = [d for v, d in dist.items() if v in target]
    return min(ds) if ds else float("inf")


ACYCLIC = "acyclic"


def girth(g: Graph) -> int | str:
    """Length of a shortest cycle, or ``"acyclic"``."""
    best = None
    rows = g.rows
    for root in range(g.n):
        if not rows[root]:
            continue
        dist = {root: 0}
        parent = {root: -1}
        q = deque([root])
        while q:
            u = q.popleft()
            du = dist[u]
            if best is not None and 2 * du + 1 >= best:
                break
            for w in _bits(rows[u]):
                if w not in dist:
                    dist[w] = du + 1
                    parent[w] = u
                    q.append(w)
                elif parent[u] != w:
                    c = du + dist[w] + 1
                    if best is None or c < best:
                        best = c
    return ACYCLIC if best is None else best


def diameter(g: Graph) -> float:
    """Largest finite distance; ``inf`` if disconnected (0 for n <= 1)."""
    best = 0
    for v in range(g.n):
        dist = bfs_distances(g, [v])
        if len(dist) < g.n:
            return float("inf")
        best = max(best, max(dist.values()))
    return best


def components(g: Graph) -> list[list[int]]:
    left = set(range(g.n))
    out = []
    while left:
        s = min(left)
        comp = sorted(bfs_distances(g, [s]))
        out.append(comp)
        left -= set(comp)
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(bfs_distances(g, [0])) == g.n


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------


def _n_header(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    return "~~" + "".join(chr(63 + ((n >> s) & 63)) for s in (30, 24, 18, 12, 6, 0))


def encode_graph6(g: Graph) -> str:
    n = g.n
    out = [_n_header(n)]
    acc = nb = 0
    rows = g.rows
    for j in range(1, n):
        rj = rows[j]
        for i in range(j):
            acc = (acc << 1) | (rj >> i & 1)
            nb += 1
            if nb == 6:
                out.append(chr(63 + acc))
                acc = nb = 0
    if nb:
        out.append(chr(63 + (acc << (6 - nb))))
    return "".join(out)


def decode_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise GraphFormatError("empty graph6 string", 0)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"character {ch!r} outside graph6 range", i)
    vals = [ord(c) - 63 for c in s]
    if vals[0] == 63:
        if len(vals) >= 2 and vals[1] == 63:
            if len(vals) < 8:
                raise GraphFormatError("truncated 8-byte size header", len(vals))
            n = 0
            for x in vals[2:8]:
                n = (n << 6) | x
            pos = 8
        else:
            if len(vals) < 4:
                raise GraphFormatError("truncated 4-byte size header", len(vals))
            n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
            pos = 4
    else:
        n = vals[0]
        pos = 1
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(vals) - pos != need:
        raise GraphFormatError(
            f"expected {need} edge bytes for n={n}, found {len(vals) - pos}",
            min(len(vals), pos + need),
        )
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = vals[pos + k // 6]
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if nbits % 6:
        pad = vals[-1] & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise GraphFormatError("non-zero padding bits", len(vals) - 1)
    return Graph(n, rows)


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    lines = text.splitlines()
    offsets = []
    pos = 0
    for line in lines:
        offsets.append(pos)
        pos += len(line) + 1
    body = [(off, line) for off, line in zip(offsets, lines) if line.strip() and not line.lstrip().startswith("#")]
    if not body:
        raise GraphFormatError("missing 'n m' header", 0)
    off, head = body[0]
    parts = head.split()
    try:
        n, m = int(parts[0]), int(parts[1])
        if len(parts) != 2:
            raise ValueError
    except (ValueError, IndexError):
        raise GraphFormatError(f"bad header {head.strip()!r}; expected 'n m'", off) from None
    if len(body) - 1 != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(body) - 1}", off)
    edges = []
    for off, line in body[1:]:
        parts = line.split()
        try:
            if len(parts) != 2:
                raise ValueError
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"bad edge line {line.strip()!r}", off) from None
        edges.append((u, v))
    try:
        return build_graph(n, edges)
    except GraphInputError as exc:
        raise GraphFormatError(str(exc), 0) from None


def read_graph(path: str) -> Graph:
    """Load a graph6 file (first line) or an edge-list file."""
    with open(path) as fh:
        text = fh.read()
    first = text.strip().splitlines()[0] if text.strip() else ""
    if first and len(first.split()) == 1 and not first.strip().isdigit():
        return decode_graph6(first)
    return parse_edge_list(text)
