import numpy as np
import pytest

from catgalois import corpus, finalg, kernels


@pytest.mark.parametrize("kind", ["group", "loop", "ring"])
def test_counts_match_known(kind):
    algs = corpus.family(kind)
    assert corpus.counts_by_order(algs, corpus.MAX_ORDER[kind]) == corpus.KNOWN_COUNTS[kind]


@pytest.mark.parametrize("kind", ["group", "loop", "ring"])
def test_members_pairwise_non_isomorphic(kind):
    keys = [corpus.canonical_key(A) for A in corpus.family(kind, 8)]
    assert len(set(keys)) == len(keys)


def test_small_groups_from_scratch():
    """Groups up to order 8 recounted by Latin-square backtracking."""
    counts = []
    for n in range(1, 9):
        keys = {kernels.canonical_form(t[None]).tobytes()
                for t in kernels.enumerate_loops(n, True)}
        counts.append(len(keys))
    assert counts == [1, 1, 1, 2, 1, 2, 1, 5]
    assert counts == corpus.KNOWN_COUNTS["group"][:8]


def test_loops_of_order_four_are_groups():
    L4 = corpus.family("loop", 4)
    four = [A for A in L4 if A.n == 4]
    assert len(four) == 2 and all(A.is_associative for A in four)


def test_two_element_rings():
    two = [R for R in corpus.family("ring", 2) if R.n == 2]
    assert sorted(int(R.mul[1, 1]) for R in two) == [0, 1]


def test_cache_round_trip(tmp_path):
    algs = corpus.family("group", 6)
    path = corpus.write_family("group", algs, tmp_path)
    assert path.exists() and "Z6" in path.read_text()


def test_named_constructors():
    assert corpus.quaternion_group().n == 8
    assert not corpus.quaternion_group().is_commutative
    assert corpus.klein_four().is_commutative
    assert finalg.is_isomorphic(corpus.direct_product(corpus.cyclic_group(2), corpus.cyclic_group(3)),
                                corpus.cyclic_group(6))
    L = corpus.least_nonassociative_loop(5)
    assert L.n == 5 and not L.is_associative
    assert np.array_equal(L.mul[0], np.arange(5))
