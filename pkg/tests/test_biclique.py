import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_bicliques, brute_max_balanced, brute_min_bk_ratio
from vattool.biclique import (
    BicliqueWitness,
    PreconditionError,
    attack_set_of,
    balanced_truncation,
    bcbs_decision,
    bk_ratio,
    is_biclique,
    max_balanced_biclique,
    min_bk_ratio,
)
from vattool.graph import BipartiteGraph
from vattool.measures import SizeGuardError
from vattool.reduction import plant_biclique_instance

MATCHING2 = BipartiteGraph.from_edges(2, 2, [(0, 0), (1, 1)])


def knn(n):
    return BipartiteGraph.from_edges(n, n, product(range(n), range(n)))


def matching(n):
    return BipartiteGraph.from_edges(n, n, [(i, i) for i in range(n)])


def random_bipartite(rng, n, p=None):
    p = rng.random() if p is None else p
    return BipartiteGraph(n, n, frozenset((i, j) for i in range(n) for j in range(n) if rng.random() < p))


def test_is_biclique_examples():
    assert is_biclique(MATCHING2, BicliqueWitness(0, frozenset({0}), frozenset({0})))
    assert not is_biclique(MATCHING2, BicliqueWitness(0, frozenset({0}), frozenset({0, 1})))
    with pytest.raises(ValueError):
        BicliqueWitness(0, frozenset(), frozenset({0}))
    with pytest.raises(ValueError):
        BicliqueWitness(0, frozenset({0, 1}), frozenset({0}))


def test_bcbs_decision_examples():
    for n in range(1, 5):
        w = bcbs_decision(knn(n), n)
        assert w is not None and w.size == n and is_biclique(knn(n), w)
    assert bcbs_decision(MATCHING2, 2) is None
    assert bcbs_decision(BipartiteGraph(3, 3), 1) is None
    with pytest.raises(PreconditionError):
        bcbs_decision(MATCHING2, 3)


def test_size_guard():
    with pytest.raises(SizeGuardError):
        max_balanced_biclique(matching(17))
    assert max_balanced_biclique(matching(17), allow_large=True)[0] == 1


def test_max_balanced_examples():
    assert max_balanced_biclique(knn(4))[0] == 4
    for n in range(1, 6):
        assert max_balanced_biclique(matching(n))[0] == 1
    assert max_balanced_biclique(BipartiteGraph(3, 3)) == (0, None)


@pytest.mark.parametrize("seed", range(20))
def test_planted_biclique_is_found(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 8)
    k0 = rng.randint(1, n - 1)
    b = plant_biclique_instance(n, k0, 0.2, seed)
    k, w = max_balanced_biclique(b)
    assert k >= k0
    assert w.balanced and is_biclique(b, w)


def _all_balanced(n):
    pairs = list(product(range(n), range(n)))
    for mask in range(1 << len(pairs)):
        yield BipartiteGraph(n, n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_max_balanced_exhaustive(n):
    population = list(_all_balanced(n))
    if n == 4:
        population = random.Random(4).sample(population, 400)
    for b in population:
        k, w = max_balanced_biclique(b)
        assert k == brute_max_balanced(n, b.edges)
        if k:
            assert is_biclique(b, w) and w.size == k and w.balanced
            assert bcbs_decision(b, k) is not None
        if k < n:
            assert bcbs_decision(b, k + 1) is None


@pytest.mark.parametrize("seed", range(40))
def test_max_balanced_random(seed):
    rng = random.Random(seed)
    n = rng.randint(5, 8)
    b = random_bipartite(rng, n)
    k, w = max_balanced_biclique(b)
    if k:
        assert is_biclique(b, w) and w.size == k
    if k < n:
        assert bcbs_decision(b, k + 1) is None


def test_min_bk_ratio_examples():
    value, w = min_bk_ratio(MATCHING2)
    assert value == 2 and is_biclique(MATCHING2, w)
    k33_minus = BipartiteGraph.from_edges(3, 3, [p for p in product(range(3), range(3)) if p != (2, 2)])
    value, w = min_bk_ratio(k33_minus)
    assert value == Fraction(1, 2)
    assert brute_min_bk_ratio(3, k33_minus.edges) == Fraction(1, 2)
    assert min_bk_ratio(BipartiteGraph.from_edges(3, 3, [(1, 2)]))[0] == 4
    with pytest.raises(PreconditionError):
        min_bk_ratio(BipartiteGraph(2, 2))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_min_bk_ratio_exhaustive(n):
    for b in _all_balanced(n):
        if not b.edges or (n == 1 and b.is_complete):
            continue
        value, w = min_bk_ratio(b)
        assert is_biclique(b, w)
        assert len(w.a) <= len(w.b) and len(w.a) + len(w.b) <= 2 * n - 1
        assert bk_ratio(n, w) == value
        assert value == brute_min_bk_ratio(n, b.edges)


@pytest.mark.parametrize("seed", range(40))
def test_min_bk_ratio_random(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(4, 6)
    b = random_bipartite(rng, n)
    if not b.edges:
        return
    value, w = min_bk_ratio(b)
    assert is_biclique(b, w) and bk_ratio(n, w) == value
    assert value == brute_min_bk_ratio(n, b.edges)


def test_min_bk_ratio_orientation_from_v2():
    # the only biclique with a small side has A in V2
    b = BipartiteGraph.from_edges(3, 3, [(0, 0), (1, 0), (2, 0)])
    value, w = min_bk_ratio(b)
    assert w.side_of_a == 1 and w.a == {0} and w.b == {0, 1, 2}
    assert value == Fraction(2, 1)


def test_attack_set_of():
    w = BicliqueWitness(1, frozenset({0}), frozenset({0, 2}))
    # V1 keeps {0, 2}, V2 keeps {0} -> global {0, 2, 3}
    assert attack_set_of(3, w) == {1, 4, 5}


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 6), st.randoms(use_true_random=False))
def test_balanced_sub_selection_of_any_biclique(n, rng):
    b = random_bipartite(rng, n, 0.6)
    bicliques = list(brute_bicliques(n, b.edges))
    if not bicliques:
        return
    p, q = rng.choice(bicliques)
    small, large, side = (p, q, 0) if len(p) <= len(q) else (q, p, 1)
    picked = rng.sample(list(large), len(small))
    w = BicliqueWitness(side, frozenset(small), frozenset(picked))
    assert w.balanced and is_biclique(b, w)
    full = BicliqueWitness(side, frozenset(small), frozenset(large))
    assert is_biclique(b, balanced_truncation(full))
