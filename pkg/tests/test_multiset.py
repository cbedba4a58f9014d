import itertools

import pytest
from hypothesis import given, settings, strategies as st

from mulprob.combinatorics import multichoose
from mulprob.elements import Pair, Space
from mulprob.errors import DomainError, ResourceLimitError
from mulprob.multiset import (
    Multiset,
    accumulate,
    enumerate_arrangements,
    enumerate_multisets,
    flatten_multiset,
)


def ms(**counts):
    return Multiset(counts)


class TestBasics:
    def test_size(self):
        assert ms(a=3, b=2).size == 5
        assert Multiset().size == 0
        assert ms(x=7).size == 7

    def test_canonical_storage(self):
        assert Multiset([("b", 2), ("a", 3)]) == Multiset([("a", 3), ("b", 2)])
        assert Multiset({"a": 0, "b": 1}) == ms(b=1)
        assert ms(a=1)["a"] == 1
        assert ms(a=1)["b"] == 0

    def test_duplicate_entries_merge(self):
        assert Multiset([("a", 1), ("a", 1)]) == ms(a=2)

    def test_negative_multiplicity_rejected(self):
        with pytest.raises(DomainError):
            Multiset({"a": -1})

    def test_add(self):
        assert ms(a=2) + ms(a=1, b=1) == ms(a=3, b=1)
        phi = ms(a=1, b=4)
        assert phi + Multiset() == phi
        assert ms(a=1) + ms(b=1) == ms(a=1, b=1)

    def test_remove_one(self):
        assert ms(a=3, b=2).remove_one("a") == ms(a=2, b=2)
        assert ms(x=1).remove_one("x") == Multiset()
        with pytest.raises(DomainError):
            ms(b=2).remove_one("a")

    def test_pointwise_order(self):
        assert ms(a=1) <= ms(a=3, b=2)
        assert not (ms(a=4) <= ms(a=3, b=2))
        assert Multiset() <= ms(a=3, b=2)

    def test_tensor(self):
        left = ms(a=3, b=2, c=1)
        right = Multiset({"0": 2, "1": 4})
        expected = Multiset(
            {
                Pair("a", "0"): 6,
                Pair("a", "1"): 12,
                Pair("b", "0"): 4,
                Pair("b", "1"): 8,
                Pair("c", "0"): 2,
                Pair("c", "1"): 4,
            }
        )
        assert left.tensor(right) == expected

    def test_tensor_point_and_empty(self):
        phi = ms(a=2, b=1)
        assert phi.tensor(ms(y=1)) == Multiset({Pair(e, "y"): n for e, n in phi.entries})
        assert Multiset().tensor(phi) == Multiset()

    def test_map_elements(self):
        assert ms(a=3, b=2).map_elements(lambda _: "c") == ms(c=5)
        phi = ms(a=1, b=2)
        assert phi.map_elements(lambda x: x) == phi
        pairs = Multiset({Pair("a", "0"): 2, Pair("b", "0"): 1})
        assert pairs.map_elements(lambda p: p.fst) == ms(a=2, b=1)

    def test_coefficient(self):
        assert ms(a=2, b=3).coefficient() == 10
        assert ms(x=9).coefficient() == 1
        perms = set(itertools.permutations("abc"))
        assert ms(a=1, b=1, c=1).coefficient() == len(perms)

    def test_scale(self):
        assert ms(a=1, b=2).scale(3) == ms(a=3, b=6)
        assert ms(a=1).scale(0) == Multiset()


class TestAccumulate:
    def test_counts_occurrences(self):
        assert accumulate("aaba") == ms(a=3, b=1)

    def test_empty(self):
        assert accumulate(()) == Multiset()

    def test_order_insensitive(self):
        assert accumulate("ba") == ms(a=1, b=1)


class TestFlatten:
    def test_weighted_union(self):
        outer = Multiset({ms(a=1): 2, ms(a=1, b=1): 1})
        assert flatten_multiset(outer) == ms(a=3, b=1)

    def test_empty(self):
        assert flatten_multiset(Multiset()) == Multiset()

    def test_rejects_non_multiset_elements(self):
        with pytest.raises(DomainError):
            flatten_multiset(ms(a=1))


class TestEnumerateMultisets:
    def test_two_symbols_size_three(self):
        got = enumerate_multisets(Space(["a", "b"]), 3)
        assert got == [ms(a=3), ms(a=2, b=1), ms(a=1, b=2), ms(b=3)]

    def test_size_zero(self):
        assert enumerate_multisets(Space(["a", "b"]), 0) == [Multiset()]

    def test_singletons(self):
        got = enumerate_multisets(Space(["a", "b", "c"]), 1)
        assert got == [ms(a=1), ms(b=1), ms(c=1)]

    def test_empty_space_rejected(self):
        with pytest.raises(DomainError):
            enumerate_multisets(Space([]), 1)

    def test_counts_and_uniqueness(self):
        letters = ["a", "b", "c", "d"]
        for n in range(1, 5):
            space = Space(letters[:n])
            for k in range(7):
                got = enumerate_multisets(space, k)
                assert len(got) == multichoose(n, k)
                assert len(set(got)) == len(got)
                assert all(m.size == k for m in got)

    def test_emitted_in_canonical_element_order(self):
        from mulprob.elements import elem_key

        got = enumerate_multisets(Space(["a", "b", "c"]), 3)
        keys = [elem_key(m) for m in got]
        assert keys == sorted(keys)

    def test_cell_budget(self, monkeypatch):
        monkeypatch.setenv("MULPROB_MAX_CELLS", "5")
        with pytest.raises(ResourceLimitError):
            enumerate_multisets(Space(["a", "b", "c"]), 5)


class TestEnumerateArrangements:
    def test_listed_sequences(self):
        got = enumerate_arrangements(ms(a=1, b=2))
        assert got == [("a", "b", "b"), ("b", "a", "b"), ("b", "b", "a")]

    def test_constant(self):
        assert enumerate_arrangements(ms(x=4)) == [("x",) * 4]

    def test_ten_sequences_of_length_five(self):
        got = enumerate_arrangements(ms(a=2, b=3))
        assert len(got) == 10
        assert all(len(s) == 5 for s in got)

    def test_count_matches_coefficient(self):
        letters = ["a", "b", "c"]
        for n in range(1, 4):
            space = letters[:n]
            for k in range(6):
                for m in enumerate_multisets(Space(space), k):
                    seqs = enumerate_arrangements(m)
                    assert len(seqs) == m.coefficient()
                    assert len(set(seqs)) == len(seqs)
                    assert all(accumulate(s) == m for s in seqs)


elements = st.sampled_from(["a", "b", "c"])
multisets = st.dictionaries(elements, st.integers(min_value=0, max_value=4)).map(Multiset)
sequences = st.lists(elements, max_size=5)


@settings(max_examples=150, deadline=None)
@given(multisets, multisets)
def test_sizes_add_and_multiply(phi, psi):
    assert (phi + psi).size == phi.size + psi.size
    assert phi.tensor(psi).size == phi.size * psi.size


@settings(max_examples=150, deadline=None)
@given(sequences, st.randoms(use_true_random=False))
def test_accumulate_permutation_stable(xs, rng):
    shuffled = list(xs)
    rng.shuffle(shuffled)
    assert accumulate(xs) == accumulate(shuffled)


@settings(max_examples=150, deadline=None)
@given(multisets)
def test_functoriality(phi):
    f = {"a": "b", "b": "b", "c": "a"}
    g = {"a": "c", "b": "a", "c": "a"}
    composed = phi.map_elements(lambda x: g[f[x]])
    staged = phi.map_elements(f.__getitem__).map_elements(g.__getitem__)
    assert composed == staged
    assert phi.map_elements(lambda x: x) == phi
    assert phi.map_elements(f.__getitem__).size == phi.size


def test_coefficients_partition_sequence_space():
    # Collapsing is a surjection from length-K sequences, so the
    # coefficients over all size-K multisets must add up to |X|^K.
    letters = ["a", "b", "c"]
    for n in range(1, 4):
        for k in range(6):
            total = sum(m.coefficient() for m in enumerate_multisets(Space(letters[:n]), k))
            assert total == n ** k
