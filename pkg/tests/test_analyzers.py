import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hbootstrap.analyzers import (
    UNKNOWN,
    brute_force_max_running_time,
    brute_force_weak_saturation,
    extract_alternating_witness,
    is_behrendian,
    is_l1_inseparable,
    percolation_probability,
    replay_round_exact,
    sample_gnp,
    separation_witness,
    verify_chain_conditions,
    wilson_interval,
)
from hbootstrap.arithmetic import DilationSet, verified
from hbootstrap.constructions.chains import dilation_k5_assembly, ladder_k6_chain, simple_clique_chain
from hbootstrap.constructions.extremal import k4_extremal
from hbootstrap.engine import InfectionRule, final_graph, percolates, run_process
from hbootstrap.graphcore import (
    are_isomorphic,
    build_graph,
    complete_graph,
    decode_graph6,
)
from hbootstrap.rules import parse_rule

K3, K4, K5 = parse_rule("clique 3"), parse_rule("clique 4"), parse_rule("clique 5")
K5_MINUS = complete_graph(5).remove_edges([(0, 1)])


@st.composite
def graphs(draw, max_n=7, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [p for p, k in zip(pairs, keep) if k])


# -- inseparability -------------------------------------------------------


def connected_after(n, edges, drop, cut):
    keep = [v for v in range(n) if v not in drop]
    if len(keep) <= 1:
        return True
    parent = {v: v for v in keep}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for e in edges:
        if e == cut or e[0] in drop or e[1] in drop:
            continue
        parent[find(e[0])] = find(e[1])
    return len({find(v) for v in keep}) == 1


def oracle_inseparable(h, ell):
    edges = h.edges()
    for size in range(ell + 1):
        for drop in itertools.combinations(range(h.n), size):
            for cut in [None] + edges:
                if not connected_after(h.n, edges, set(drop), cut):
                    return False
    return True


def test_inseparability_examples():
    assert is_l1_inseparable(complete_graph(5), 2)
    assert not is_l1_inseparable(parse_rule("wheel 7").graph, 2)
    assert not is_l1_inseparable(complete_graph(4), 2)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=7, min_n=2), st.integers(0, 2))
def test_inseparability_matches_union_find_oracle(g, ell):
    if g.m == 0:
        return
    assert is_l1_inseparable(g, ell) == oracle_inseparable(g, ell)
    wit = separation_witness(g, ell)
    if wit is not None:
        drop, cut = wit
        assert not connected_after(g.n, g.edges(), set(drop), cut)


# -- Behrendian -----------------------------------------------------------


def cycles(g):
    """Edge lists of all cycles, each in cyclic order."""
    out = set()
    for k in range(3, g.n + 1):
        for vs in itertools.permutations(range(g.n), k):
            if vs[0] != min(vs) or vs[1] > vs[-1]:
                continue
            if all(g.has_edge(vs[i], vs[(i + 1) % k]) for i in range(k)):
                out.add(tuple(tuple(sorted((vs[i], vs[(i + 1) % k]))) for i in range(k)))
    return out


def oracle_behrendian(f):
    edges = f.edges()
    cyc = cycles(f)
    for colour in itertools.product(range(len(edges)), repeat=len(edges)):
        if len(set(colour)) == 1:
            continue
        c = dict(zip(edges, colour))
        good = False
        for cy in cyc:
            changes = sum(1 for i in range(len(cy)) if c[cy[i]] != c[cy[i - 1]])
            if 2 <= changes <= 3:
                good = True
                break
        if not good:
            return False
    return True


def test_behrendian_examples():
    assert is_behrendian(complete_graph(3)).verdict is True
    assert is_behrendian(K5_MINUS).verdict is True
    res = is_behrendian(build_graph(4, [(0, 1), (1, 2), (2, 3)]))
    assert res.verdict is False and res.counterexample
    assert is_behrendian(complete_graph(6), edge_cap=10).verdict == UNKNOWN


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=5, min_n=3))
def test_behrendian_matches_colouring_oracle(g):
    if g.m == 0 or g.m > 6:
        return
    assert is_behrendian(g).verdict == oracle_behrendian(g)


# -- chain conditions ----------------------------------------------------


def test_chain_condition_examples():
    rep = verify_chain_conditions(simple_clique_chain(5, 4), ("dagger", "star"))
    assert rep.passed and not rep.witnesses
    rep = verify_chain_conditions(simple_clique_chain(4, 3), ("star",))
    assert not rep.passed
    c = dilation_k5_assembly(61, verified(DilationSet(61, (1, 11))))
    assert verify_chain_conditions(c, ("dagger", "star")).passed


def test_star_witness_is_reproducible():
    chain = simple_clique_chain(4, 3)
    wit = verify_chain_conditions(chain, ("star",)).witnesses["star"]
    verts = sorted({v for e in wit for v in e})
    idx = {v: i for i, v in enumerate(verts)}
    w = build_graph(len(verts), [(idx[a], idx[b]) for a, b in wit])
    assert are_isomorphic(w, complete_graph(4).remove_edges([(0, 1)]))
    assert set(wit) <= set(chain.underlying.edges())
    assert not any(set(wit) <= chain.copy_edges(i) for i in range(chain.length))


def test_dagger_witness_is_reproducible():
    chain = ladder_k6_chain(3, 2)
    rep = verify_chain_conditions(chain, ("dagger",))
    assert not rep.passed
    # copies are reported 1-based
    i, j, e = rep.witnesses["dagger"]
    i, j = i - 1, j - 1
    assert j != i + 1 and e in chain.copy_edges(i) and e in chain.copy_edges(j)


@pytest.mark.parametrize(
    "chain",
    [
        simple_clique_chain(5, 5),
        simple_clique_chain(6, 3),
        simple_clique_chain(7, 2),
        ladder_k6_chain(2, 2),
        ladder_k6_chain(3, 3),
        dilation_k5_assembly(61, verified(DilationSet(61, (1, 11)))),
    ],
    ids=["k5", "k6", "k7", "ladder2", "ladder3", "dilation61"],
)
def test_chain_conditions_give_exact_replay(chain):
    rep = verify_chain_conditions(chain)
    assert rep.passed_flags["star"] and (rep.passed_flags["dagger"] or rep.passed_flags["dagger_prime"])
    assert replay_round_exact(chain)[0]


def test_report_text():
    rep = verify_chain_conditions(simple_clique_chain(5, 2), ("dagger", "star"))
    assert rep.to_text() == "dagger=pass\nstar=pass\n"


# -- alternating extraction ----------------------------------------------


def test_extraction_examples():
    t = run_process(k4_extremal(8), K4)
    g = extract_alternating_witness(t, K4)
    assert g.m == 3
    single = run_process(build_graph(3, [(0, 1), (1, 2)]), K3)
    assert extract_alternating_witness(single, K3).m == 1
    c4 = parse_rule("cycle 4")
    for i in range(20):
        rng = np.random.default_rng(np.random.SeedSequence([4, i]))
        t = run_process(sample_gnp(12, 0.3, rng), c4)
        if t.tau:
            extract_alternating_witness(t, c4)


def test_extraction_needs_a_round():
    with pytest.raises(ValueError):
        extract_alternating_witness(run_process(complete_graph(4), K4), K4)


# -- exhaustive searches -------------------------------------------------


@pytest.mark.parametrize("rule, n, want", [(K3, 5, 2), (K4, 6, 3), (K4, 7, 4)])
def test_max_running_time_examples(rule, n, want):
    res = brute_force_max_running_time(rule, n)
    assert res.value == want
    assert run_process(decode_graph6(res.witnesses[0]), rule).tau == want


@pytest.mark.parametrize("spec, n, want", [("clique 3", 5, 4), ("clique 4", 6, 9), ("cycle 4", 5, 5)])
def test_weak_saturation_examples(spec, n, want):
    rule = parse_rule(spec)
    res = brute_force_weak_saturation(rule, n)
    assert res.value == want
    w = decode_graph6(res.witnesses[0])
    assert w.m == want and percolates(w, rule)


def test_searches_do_not_depend_on_order():
    rev = lambda gs: list(reversed(gs))
    for n in (5, 6):
        assert brute_force_max_running_time(K4, n, rev).value == brute_force_max_running_time(K4, n).value
        assert brute_force_weak_saturation(K4, n, rev).value == brute_force_weak_saturation(K4, n).value


def test_triangle_plus_pendant_is_fast():
    rule = parse_rule("clique-plus-pendant 3")
    for n in range(4, 8):
        assert brute_force_max_running_time(rule, n).value <= 3


# -- clique absorption law -----------------------------------------------


ABSORB_RULES = [K4, K5, parse_rule("cycle 4"), InfectionRule(K5_MINUS), parse_rule("bipartite 2 3"), parse_rule("wheel 4")]


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=9, min_n=5), st.sampled_from(range(len(ABSORB_RULES))))
def test_clique_absorption_law(g, which):
    rule = ABSORB_RULES[which]
    fin = final_graph(g, rule)
    # greedy clique of the final graph
    W = []
    for v in sorted(range(g.n), key=lambda v: -fin.degree(v)):
        if all(fin.has_edge(v, w) for w in W):
            W.append(v)
    if len(W) < rule.v - 1:
        return
    U = [u for u in range(g.n) if u not in W and sum(g.has_edge(u, w) for w in W) >= rule.min_degree - 1]
    both = W + U
    assert all(fin.has_edge(a, b) for a, b in itertools.combinations(both, 2))


# -- Monte Carlo ---------------------------------------------------------


def test_monte_carlo_examples():
    assert percolation_probability(K3, 50, 1.0, 10, seed=1).estimate == 1.0
    est = percolation_probability(K3, 50, 0.30, 200, seed=7)
    assert est.estimate >= 0.95 and est.lo <= est.estimate <= est.hi


def test_monte_carlo_is_seeded_and_job_independent():
    a = percolation_probability(K4, 40, 0.12, 30, seed=3)
    b = percolation_probability(K4, 40, 0.12, 30, seed=3)
    c = percolation_probability(K4, 40, 0.12, 30, seed=3, jobs=2)
    assert a == b == c


def test_monte_carlo_monotone_on_a_grid():
    ests = [percolation_probability(K3, 50, p, 100, seed=11) for p in (0.01, 0.04, 0.08, 0.3)]
    assert all(b.hi >= a.lo for a, b in zip(ests, ests[1:]))
    assert ests[0].estimate < ests[-1].estimate


@given(st.integers(0, 200), st.integers(1, 200))
def test_wilson_interval_brackets_the_rate(k, n):
    if k > n:
        return
    lo, hi = wilson_interval(k, n)
    assert 0 <= lo <= k / n <= hi <= 1


def test_trials_must_be_positive():
    with pytest.raises(ValueError):
        percolation_probability(K3, 10, 0.5, 0, seed=1)
