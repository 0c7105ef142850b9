import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hbootstrap.graphcore import (
    ACYCLIC,
    Embedding,
    GraphFormatError,
    GraphInputError,
    are_isomorphic,
    build_graph,
    canonical_graph,
    complete_graph,
    decode_graph6,
    edge_orbits,
    empty_graph,
    encode_graph6,
    enumerate_nonisomorphic,
    find_embedding,
    format_edge_list,
    girth,
    is_embedding,
    iter_embeddings,
    parse_edge_list,
)


@st.composite
def graphs(draw, max_n=8, min_n=0):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [p for p, k in zip(pairs, keep) if k])


def brute_embeddings(pattern, host):
    """Every injective vertex map sending pattern edges to host edges."""
    out = []
    for image in itertools.permutations(range(host.n), pattern.n):
        if all(host.has_edge(image[u], image[v]) for u, v in pattern.edges()):
            out.append(image)
    return out


def brute_isomorphic(g, h):
    if g.n != h.n or g.m != h.m:
        return False
    return any(
        all(h.has_edge(p[u], p[v]) for u, v in g.edges()) for p in itertools.permutations(range(g.n))
    )


PETERSEN = build_graph(
    10,
    [(i, (i + 1) % 5) for i in range(5)] + [(5 + i, 5 + (i + 2) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)],
)


def test_build_graph_examples():
    p3 = build_graph(3, [(0, 1), (1, 2), (2, 1)])
    assert p3.m == 2 and p3.edges() == [(0, 1), (1, 2)]
    assert build_graph(4, itertools.combinations(range(4), 2)).m == 6
    c5 = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert girth(c5) == 5


def test_build_graph_errors():
    with pytest.raises(GraphInputError):
        build_graph(3, [(0, 3)])
    with pytest.raises(GraphInputError):
        build_graph(3, [(1, 1)])
    with pytest.raises(GraphInputError):
        build_graph(-1, [])


def test_zero_vertices():
    g = empty_graph(0)
    assert g.m == 0 and g.edges() == [] and decode_graph6(encode_graph6(g)).n == 0


@given(graphs())
def test_adjacency_is_symmetric_and_irreflexive(g):
    for u in range(g.n):
        assert not g.has_edge(u, u)
        for v in range(g.n):
            assert g.has_edge(u, v) == g.has_edge(v, u)
    assert g.m == sum(g.degrees()) // 2 == len(g.edges())


def test_find_embedding_examples():
    assert find_embedding(complete_graph(3), complete_graph(4)) is not None
    c4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert find_embedding(c4, complete_graph(3)) is None
    k5m = complete_graph(5).remove_edges([(0, 1)])
    host = complete_graph(5).remove_edges([(2, 4)])
    emb = find_embedding(k5m, host, ((0, 1), (2, 4)))
    assert emb is not None and {emb.image[0], emb.image[1]} == {2, 4}
    assert is_embedding(k5m, host, emb)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=5), graphs(max_n=7))
def test_embedding_search_matches_brute_force(pattern, host):
    fast = {e.image for e in iter_embeddings(pattern, host)}
    assert fast == set(brute_embeddings(pattern, host))
    assert (find_embedding(pattern, host) is None) == (not fast)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=5, min_n=2), graphs(max_n=7, min_n=2), st.data())
def test_anchored_search_matches_brute_force(pattern, host, data):
    a, b = data.draw(st.sampled_from(list(itertools.combinations(range(pattern.n), 2))))
    x, y = data.draw(st.sampled_from(list(itertools.permutations(range(host.n), 2))))
    emb = find_embedding(pattern, host, ((a, b), (x, y)))
    want = [im for im in brute_embeddings(pattern, host) if {im[a], im[b]} == {x, y}]
    assert (emb is not None) == bool(want)
    if emb is not None:
        assert is_embedding(pattern, host, emb) and {emb.image[a], emb.image[b]} == {x, y}


def test_edge_orbit_examples():
    assert [len(o) for o in edge_orbits(complete_graph(4)).orbits] == [6]
    p4 = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    assert sorted(len(o) for o in edge_orbits(p4).orbits) == [1, 2]
    star = build_graph(4, [(0, 1), (0, 2), (0, 3)])
    assert [len(o) for o in edge_orbits(star).orbits] == [3]
    with pytest.raises(GraphInputError):
        edge_orbits(empty_graph(3))


def brute_automorphisms(g):
    return [p for p in itertools.permutations(range(g.n)) if all(g.has_edge(p[u], p[v]) for u, v in g.edges())]


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=6))
def test_edge_orbits_have_witnesses(g):
    if g.m == 0:
        return
    part = edge_orbits(g)
    covered = [e for o in part.orbits for e in o]
    assert sorted(covered) == g.edges()
    autos = brute_automorphisms(g)
    for orbit in part.orbits:
        for e, f in itertools.combinations(orbit, 2):
            sigma = part.exchange(e, f)
            assert sigma in autos
            assert {sigma[e[0]], sigma[e[1]]} == set(f)
    # orbits are maximal: an automorphism never maps across orbits
    where = {e: i for i, o in enumerate(part.orbits) for e in o}
    for p in autos:
        for u, v in g.edges():
            img = tuple(sorted((p[u], p[v])))
            assert where[img] == where[(u, v)]


def labelled_class_count(n):
    seen = []
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        g = build_graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
        if not any(brute_isomorphic(g, h) for h in seen):
            seen.append(g)
    return len(seen)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_enumeration_matches_brute_force_classes(n):
    gs = list(enumerate_nonisomorphic(n))
    assert len(gs) == labelled_class_count(n)
    for g, h in itertools.combinations(gs, 2):
        assert not are_isomorphic(g, h)


def test_enumeration_known_counts():
    # 1, 2, 4, 11, 34, 156, 1044 classes
    assert [sum(1 for _ in enumerate_nonisomorphic(n)) for n in range(1, 8)] == [1, 2, 4, 11, 34, 156, 1044]


def test_enumeration_is_deterministic_and_bounded():
    assert [encode_graph6(g) for g in enumerate_nonisomorphic(5)] == [encode_graph6(g) for g in enumerate_nonisomorphic(5)]
    with pytest.raises(GraphInputError):
        list(enumerate_nonisomorphic(9))
    with pytest.raises(GraphInputError):
        list(enumerate_nonisomorphic(0))


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6), st.randoms())
def test_canonical_form_is_a_class_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert canonical_graph(g) == canonical_graph(h)
    assert brute_isomorphic(g, canonical_graph(g))


def test_girth_examples():
    assert girth(build_graph(5, [(i, (i + 1) % 5) for i in range(5)])) == 5
    assert girth(build_graph(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)])) == ACYCLIC
    assert girth(PETERSEN) == 5
    assert girth(complete_graph(4)) == 3


def brute_girth(g):
    for k in range(3, g.n + 1):
        for vs in itertools.permutations(range(g.n), k):
            if vs[0] == min(vs) and all(g.has_edge(vs[i], vs[(i + 1) % k]) for i in range(k)):
                return k
    return ACYCLIC


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7))
def test_girth_matches_cycle_enumeration(g):
    assert girth(g) == brute_girth(g)


def test_graph6_examples():
    assert encode_graph6(complete_graph(3)) == "Bw"
    assert encode_graph6(empty_graph(1)) == "@"
    p4 = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    assert decode_graph6(encode_graph6(p4)).edges() == p4.edges()


def test_graph6_large_header_round_trip():
    g = build_graph(70, [(i, i + 1) for i in range(69)])
    text = encode_graph6(g)
    assert text.startswith("~")
    assert decode_graph6(text).edges() == g.edges()


@pytest.mark.parametrize("n", range(1, 8))
def test_graph6_round_trip_on_all_classes(n):
    for g in enumerate_nonisomorphic(n):
        assert decode_graph6(encode_graph6(g)).rows == g.rows


@pytest.mark.parametrize(
    "text, offset",
    [("", 0), ("B", 1), ("Bww", 2), ("B\x20", 1), ("Bx", 1), ("~?", 2)],
)
def test_graph6_errors_carry_offsets(text, offset):
    with pytest.raises(GraphFormatError) as info:
        decode_graph6(text)
    assert info.value.offset == offset


@given(graphs())
def test_edge_list_round_trip(g):
    assert parse_edge_list(format_edge_list(g)).rows == g.rows


def test_edge_list_errors():
    with pytest.raises(GraphFormatError):
        parse_edge_list("3 2\n0 1\n")
    with pytest.raises(GraphFormatError):
        parse_edge_list("3 1\n0 x\n")
    with pytest.raises(GraphFormatError):
        parse_edge_list("3 1\n0 5\n")
    with pytest.raises(GraphFormatError):
        parse_edge_list("")


def test_embedding_is_injective_map():
    host = complete_graph(4)
    for emb in iter_embeddings(complete_graph(3), host):
        assert isinstance(emb, Embedding) and len(set(emb.image)) == 3
