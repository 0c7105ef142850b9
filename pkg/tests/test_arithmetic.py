import functools
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hbootstrap.arithmetic import (
    DilationSet,
    behrend_sphere_set,
    exhaustive_best_set,
    find_violation,
    is_prime,
    is_violation,
    verified,
    verify_solution_free,
)


def oracle_free(p, A, c=4):
    """Literal definition: brute force over every coefficient vector and triple."""
    for alpha in itertools.product(range(-c, c + 1), repeat=3):
        for a in itertools.product(A, repeat=3):
            if sum(x * y for x, y in zip(alpha, a)) % p == 0:
                support = {y for x, y in zip(alpha, a) if x}
                if not (sum(alpha) == 0 and len(support) <= 1):
                    return False
    return True


PRIMES = [p for p in range(5, 80) if is_prime(p)]


@functools.lru_cache(maxsize=None)
def sphere(p):
    return behrend_sphere_set(p)


def test_known_violation_and_witness():
    ok, wit = verify_solution_free(DilationSet(7, (1, 2)))
    assert not ok and wit == ((4, -2, 0), (1, 2, None))
    assert 4 * 1 - 2 * 2 == 0


def test_empty_set_is_free():
    for p in (5, 7, 31):
        assert verify_solution_free(DilationSet(p, ()))[0]


def test_single_element_agrees_with_oracle():
    for p in (11, 13, 17):
        assert verify_solution_free(DilationSet(p, (1,)))[0] == oracle_free(p, [1])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES), st.data())
def test_verifier_matches_literal_definition(p, data):
    A = data.draw(st.lists(st.integers(1, p - 1), min_size=1, max_size=3, unique=True))
    ok, wit = verify_solution_free(DilationSet(p, tuple(A)))
    assert ok == oracle_free(p, A)
    if not ok:
        alpha, a = wit
        filled = [x if x is not None else A[0] for x in a]
        assert is_violation(DilationSet(p, tuple(A)), alpha, filled)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PRIMES), st.data())
def test_violation_is_symmetric_in_slots(p, data):
    A = data.draw(st.lists(st.integers(1, p - 1), min_size=1, max_size=3, unique=True))
    s = DilationSet(p, tuple(A))
    alpha = data.draw(st.tuples(*[st.integers(-4, 4)] * 3))
    a = data.draw(st.tuples(*[st.sampled_from(A)] * 3))
    for perm in itertools.permutations(range(3)):
        assert is_violation(s, [alpha[i] for i in perm], [a[i] for i in perm]) == is_violation(s, alpha, a)


@pytest.mark.parametrize("p", [7, 11, 13, 17, 19, 23, 31, 61])
def test_exhaustive_best_set_is_verified_and_maximum(p):
    best = exhaustive_best_set(p)
    assert best.verified and oracle_free(p, best.elements)
    # no set one larger is free (checked on the literal definition)
    singles = [a for a in range(1, p) if oracle_free(p, [a])]
    size = len(best) + 1
    if size <= 2:
        assert not any(oracle_free(p, list(c)) for c in itertools.combinations(singles, size))


def test_exhaustive_best_set_examples():
    assert exhaustive_best_set(7).verified
    assert exhaustive_best_set(61).elements == (1, 11)
    # singletons exist whenever one is valid
    assert len(exhaustive_best_set(13)) >= 1
    with pytest.raises(ValueError):
        exhaustive_best_set(15)


def test_no_pair_below_61():
    # the oracle and the search agree: the first prime with a free pair is 61
    for p in [q for q in range(29, 60) if is_prime(q)]:
        assert len(exhaustive_best_set(p)) <= 1


def test_exhaustive_best_set_is_deterministic():
    assert exhaustive_best_set(61) == exhaustive_best_set(61)


@settings(max_examples=20, deadline=None)
@given(st.data())
def test_subsets_of_verified_sets_are_verified(data):
    s = sphere(10007)
    sub = data.draw(st.lists(st.sampled_from(s.elements), unique=True))
    assert verify_solution_free(DilationSet(s.p, tuple(sub)))[0]


def test_verified_sets_avoid_three_term_progressions():
    for s in (exhaustive_best_set(61), sphere(1009), sphere(10007)):
        for x, y, z in itertools.permutations(s.elements, 3):
            assert (x + y - 2 * z) % s.p != 0


def test_behrend_sphere_set_output():
    s = sphere(10007)
    assert s.verified and all(0 < a < 10007 for a in s.elements)
    assert verify_solution_free(s)[0]
    assert len(s) >= 2


def test_behrend_needs_large_enough_p():
    # no base above 3c fits below p
    with pytest.raises(ValueError):
        behrend_sphere_set(7)
    with pytest.raises(ValueError):
        behrend_sphere_set(1000)


def test_text_round_trip():
    s = verified(DilationSet(61, (1, 11)))
    back = DilationSet.from_text(s.to_text())
    assert back == s and s.to_text().splitlines()[0] == "61 4"


def test_elements_must_be_nonzero_residues():
    with pytest.raises(ValueError):
        DilationSet(7, (0, 1))
    with pytest.raises(ValueError):
        DilationSet(7, (7,))


@pytest.mark.parametrize("c", [1, 2, 3, 4])
def test_coefficient_bound_is_a_parameter(c):
    for A in ([1, 2], [1, 5], [3], [2, 9, 20]):
        assert (find_violation(61, A, c) is None) == oracle_free(61, A, c)
