"""Counting semantics, suffix-array fast path, all-substring tables."""

import pytest

from conftest import (
    brute_force_suffix_order,
    max_disjoint_occurrences,
    naive_count_overlapping,
)
from infoseg.counting import (
    CountingMethod,
    SuffixArray,
    all_substring_counts,
    build_suffix_array,
    count,
    count_nonoverlapping,
    count_overlapping,
    sa_count_overlapping,
)


def test_method_tokens():
    assert CountingMethod.from_token("overlap") is CountingMethod.OVERLAPPING
    assert CountingMethod.from_token("nonoverlap") is CountingMethod.NONOVERLAPPING
    with pytest.raises(ValueError):
        CountingMethod.from_token("sideways")


def test_overlapping_examples():
    assert count_overlapping("abca", "abcabcabca") == 3
    assert count_overlapping("aa", "a" * 10) == 9
    assert count_overlapping("abc", "ab") == 0


def test_nonoverlapping_examples():
    assert count_nonoverlapping("abca", "abcabcabca") == 2
    assert count_nonoverlapping("aa", "a" * 10) == 5


def test_empty_query_rejected():
    for fn in (count_overlapping, count_nonoverlapping):
        with pytest.raises(ValueError):
            fn("", "abc")


def test_query_with_separator_rejected():
    with pytest.raises(ValueError):
        count_overlapping("a|b", "a|b")


def test_count_dispatch():
    assert count("aa", "aaaa", CountingMethod.OVERLAPPING) == 3
    assert count("aa", "aaaa", CountingMethod.NONOVERLAPPING) == 2


def test_no_match_across_separator():
    assert count_overlapping("ba", "ab|ab") == 0
    assert count_nonoverlapping("ba", "ab|ab") == 0
    assert count_overlapping("ab", "ab|ab") == 2


def random_string(rng, alphabet, max_len, min_len=1):
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(min_len, max_len)))


def test_counts_ordering_invariants(rng):
    for _ in range(300):
        data = random_string(rng, "abc", 40, min_len=0)
        query = random_string(rng, "abc", 5)
        ov = count_overlapping(query, data)
        nonov = count_nonoverlapping(query, data)
        assert 0 <= nonov <= ov <= max(0, len(data) - len(query) + 1)
        assert nonov * len(query) <= len(data)
        if len(query) == 1:
            assert nonov == ov


def test_single_symbol_queries_agree(rng):
    for _ in range(100):
        data = random_string(rng, "ab", 30)
        assert count_overlapping("a", data) == count_nonoverlapping("a", data)


def test_greedy_equals_max_disjoint_packing(rng):
    for _ in range(400):
        data = random_string(rng, "ab", 20, min_len=0)
        query = random_string(rng, "ab", 4)
        assert count_nonoverlapping(query, data) == max_disjoint_occurrences(query, data)


def test_suffix_array_banana():
    assert build_suffix_array("banana").sa.tolist() == [5, 3, 1, 0, 4, 2]


def test_suffix_array_empty():
    assert build_suffix_array("").sa.tolist() == []


def test_suffix_array_repeated_symbol():
    assert build_suffix_array("aaa").sa.tolist() == [2, 1, 0]


def test_suffix_array_matches_brute_force(rng):
    for _ in range(150):
        # Occasional separators: the index must order them like any symbol.
        text = random_string(rng, "abcd|", 60, min_len=0)
        index = build_suffix_array(text)
        assert index.sa.tolist() == brute_force_suffix_order(text)
        assert index.is_valid()


def test_is_valid_rejects_bad_permutation():
    good = build_suffix_array("banana")
    bad = SuffixArray("banana", good.sa[::-1].copy())
    assert not bad.is_valid()


def test_sa_count_examples():
    banana = build_suffix_array("banana")
    assert sa_count_overlapping("ana", banana) == 2
    assert sa_count_overlapping("z", banana) == 0
    assert sa_count_overlapping("abca", build_suffix_array("abcabcabca")) == 3


def test_sa_count_matches_naive(rng):
    for _ in range(300):
        data = random_string(rng, "abcd", 80, min_len=0)
        index = build_suffix_array(data)
        if data and rng.random() < 0.5:
            start = rng.randrange(len(data))
            query = data[start:start + rng.randint(1, 6)]
        else:
            query = random_string(rng, "abcd", 6)
        expect = naive_count_overlapping(query, data)
        assert sa_count_overlapping(query, index) == expect
        assert count_overlapping(query, data) == expect


def test_range_of_incremental_narrowing():
    index = build_suffix_array("abcabcabca")
    lo, hi = index.range_of("a")
    assert hi - lo == 4
    lo2, hi2 = index.range_of("ab", lo, hi, offset=1)
    assert hi2 - lo2 == 3
    assert index.range_of("abc", lo2, hi2, offset=2) == index.range_of("abc")


def test_all_substring_counts_examples():
    ov = all_substring_counts("ab", "abab", CountingMethod.OVERLAPPING)
    assert ov == {(0, 1): 2, (1, 2): 2, (0, 2): 2}
    nonov = all_substring_counts("ab", "abab", CountingMethod.NONOVERLAPPING)
    assert nonov == ov


def test_all_substring_counts_differ_on_runs():
    ov = all_substring_counts("aa", "aaa", CountingMethod.OVERLAPPING)
    assert ov == {(0, 1): 3, (1, 2): 3, (0, 2): 2}
    nonov = all_substring_counts("aa", "aaa", CountingMethod.NONOVERLAPPING)
    assert nonov == {(0, 1): 3, (1, 2): 3, (0, 2): 1}


def test_all_substring_counts_max_len():
    table = all_substring_counts("abcd", "abcd", CountingMethod.OVERLAPPING, max_len=2)
    assert set(table) == {(i, j) for i in range(4) for j in range(i + 1, 5) if j - i <= 2}


def test_all_substring_counts_matches_single_queries(rng):
    for _ in range(40):
        corpus = random_string(rng, "ab|", 30)
        test = random_string(rng, "ab", 8)
        for method in CountingMethod:
            table = all_substring_counts(test, corpus, method)
            assert set(table) == {
                (i, j) for i in range(len(test)) for j in range(i + 1, len(test) + 1)
            }
            for (i, j), got in table.items():
                assert got == count(test[i:j], corpus, method), (test[i:j], corpus)


def test_all_substring_counts_rejects_separator_in_test():
    with pytest.raises(ValueError):
        all_substring_counts("a|b", "ab", CountingMethod.OVERLAPPING)
