import itertools
from collections import Counter

from hypothesis import given
from hypothesis import strategies as st

from cardzkp.oracle import compare_distributions
from cardzkp.rng import BiasedPermutations, PermutationSource, ScriptedPermutations


@given(st.integers(0, 12), st.one_of(st.integers(0, 2**64 - 1), st.text(max_size=8)))
def test_permutation_is_a_permutation(n, seed):
    assert sorted(PermutationSource(seed).permutation(n)) == list(range(n))


@given(st.integers(0, 2**32))
def test_same_seed_same_stream(seed):
    a, b = PermutationSource(seed), PermutationSource(seed)
    assert [a.permutation(6) for _ in range(5)] == [b.permutation(6) for _ in range(5)]


def test_permutations_of_four_are_uniform():
    rnd = PermutationSource("uniform")
    counts = Counter(tuple(rnd.permutation(4)) for _ in range(24000))
    assert set(counts) == set(itertools.permutations(range(4)))
    expected = {p: 1000 for p in counts}
    assert compare_distributions(counts, expected, significance=0.001).consistent


def test_biased_source_is_not_uniform():
    rnd = BiasedPermutations(0, 0.5)
    counts = Counter(tuple(rnd.permutation(3)) for _ in range(6000))
    assert not compare_distributions(counts, {p: 1000 for p in itertools.permutations(range(3))}).consistent


def test_sample_is_uniform_subset():
    rnd = PermutationSource(5)
    counts = Counter(frozenset(rnd.sample("abcde", 2)) for _ in range(10000))
    assert len(counts) == 10
    assert compare_distributions(counts, {k: 1000 for k in counts}).consistent


def test_scripted_replays_in_order():
    rnd = ScriptedPermutations([[1, 0], [2, 0, 1]])
    assert rnd.permutation(2) == [1, 0]
    assert rnd.permutation(3) == [2, 0, 1]


def test_spawn_is_deterministic():
    assert PermutationSource(9).spawn(2).permutation(8) == PermutationSource(9).spawn(2).permutation(8)
    assert PermutationSource(9).spawn(1).permutation(8) != PermutationSource(9).spawn(2).permutation(8)
