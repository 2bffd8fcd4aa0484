"""Two substring-counting semantics and a suffix-array fast path.

Overlapping counting reports every start position at which the query
occurs, so occurrences may share characters: "aa" occurs 9 times in a
run of ten "a"s.  Non-overlapping counting is a greedy left-to-right
scan that jumps past each match before searching again, yielding the
maximum number of pairwise-disjoint occurrences: 5 in the same run.
The two agree on single-symbol queries and differ only when the query
is part of a repetitive pattern.

Queries may never contain the corpus separator; since the separator is
outside the alphabet, no match can straddle a record boundary.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .sax import SEPARATOR, SymbolString, as_text


class CountingMethod(Enum):
    """Selector threaded through the whole pipeline."""

    OVERLAPPING = "overlap"
    NONOVERLAPPING = "nonoverlap"

    @classmethod
    def from_token(cls, token: str) -> "CountingMethod":
        for m in cls:
            if m.value == token:
                return m
        raise ValueError(f"unknown counting method {token!r}")


def _check_query(query: str) -> str:
    if not query:
        raise ValueError("query must be non-empty")
    if SEPARATOR in query:
        raise ValueError("query must not contain the separator symbol")
    return query


def count_overlapping(query: SymbolString | str, data: SymbolString | str) -> int:
    """Number of start positions where query occurs in data."""
    q = _check_query(as_text(query))
    d = as_text(data)
    count = 0
    pos = d.find(q)
    while pos != -1:
        count += 1
        pos = d.find(q, pos + 1)
    return count


def count_nonoverlapping(query: SymbolString | str, data: SymbolString | str) -> int:
    """Greedy left-to-right count that skips past each match.

    str.count has exactly these semantics: it advances by the query
    length after every hit, which is the leftmost-greedy scan and is
    provably the maximum disjoint-occurrence packing.
    """
    q = _check_query(as_text(query))
    return as_text(data).count(q)


def count(query, data, method: CountingMethod) -> int:
    if method is CountingMethod.OVERLAPPING:
        return count_overlapping(query, data)
    return count_nonoverlapping(query, data)


@dataclass(frozen=True)
class SuffixArray:
    """Lexicographic order of all suffixes of a text.

    ``sa[i]`` is the start of the i-th smallest suffix.  Built once per
    class corpus and shared by every query against it.
    """

    text: str
    sa: np.ndarray

    def __len__(self) -> int:
        return len(self.text)

    def is_valid(self) -> bool:
        """Full invariant check; O(n^2), for tests only."""
        n = len(self.text)
        if sorted(int(i) for i in self.sa) != list(range(n)):
            return False
        return all(
            self.text[int(self.sa[i]):] < self.text[int(self.sa[i + 1]):]
            for i in range(n - 1)
        )

    def range_of(self, query: str, lo: int = 0, hi: int | None = None,
                 offset: int = 0) -> tuple[int, int]:
        """Half-open SA interval of suffixes having query[offset:] right
        after an already-matched prefix of length ``offset``.

        Callers narrowing one character at a time pass the previous
        interval and the next offset; fresh lookups use the defaults.
        """
        if hi is None:
            hi = len(self.text)
        text, sa = self.text, self.sa
        for d in range(offset, len(query)):
            ch = query[d]
            key = lambda s: text[s + d:s + d + 1]
            lo = bisect.bisect_left(sa, ch, lo, hi, key=key)
            hi = bisect.bisect_right(sa, ch, lo, hi, key=key)
            if lo == hi:
                break
        return lo, hi


def build_suffix_array(text: SymbolString | str) -> SuffixArray:
    """Prefix-doubling construction, O(n log^2 n) via numpy lexsort."""
    t = as_text(text)
    n = len(t)
    if n == 0:
        return SuffixArray(t, np.empty(0, dtype=np.int64))
    rank = np.frombuffer(t.encode("ascii"), dtype=np.uint8).astype(np.int64)
    sa = np.argsort(rank, kind="stable")
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[: n - k] = rank[k:]
        sa = np.lexsort((second, rank))
        changed = (rank[sa[1:]] != rank[sa[:-1]]) | (second[sa[1:]] != second[sa[:-1]])
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[sa] = np.concatenate(([0], np.cumsum(changed)))
        rank = new_rank
        if rank[sa[-1]] == n - 1:
            break
        k *= 2
    return SuffixArray(t, sa)


def sa_count_overlapping(query: SymbolString | str, index: SuffixArray) -> int:
    """Overlapping count served by two binary searches on the index."""
    q = _check_query(as_text(query))
    lo, hi = index.range_of(q)
    return hi - lo


def all_substring_counts(test: SymbolString | str, corpus: SymbolString | str,
                         method: CountingMethod,
                         max_len: int | None = None) -> dict[tuple[int, int], int]:
    """Counts of every span ``test[start:end]`` in the corpus.

    Returns a table keyed by (start, end), one entry per span with
    ``end - start <= max_len`` (unbounded by default).  Overlapping
    counts come from one suffix array of the corpus, narrowed one
    character at a time per start position; once an extension has no
    occurrence, all longer spans from that start are zero.
    Non-overlapping counts are greedy scans memoized by substring
    content, skipped entirely where the overlapping count is zero.
    """
    t = _check_query(as_text(test))
    c = as_text(corpus)
    n = len(t)
    limit = n if max_len is None else min(max_len, n)
    index = build_suffix_array(c)
    table: dict[tuple[int, int], int] = {}
    nonov_memo: dict[str, int] = {}
    for start in range(n):
        lo, hi = 0, len(c)
        for end in range(start + 1, start + limit + 1):
            if end > n:
                break
            if hi > lo:
                lo, hi = index.range_of(t[start:end], lo, hi, offset=end - start - 1)
            ov = hi - lo
            if method is CountingMethod.OVERLAPPING:
                table[(start, end)] = ov
            elif ov == 0:
                table[(start, end)] = 0
            else:
                sub = t[start:end]
                if sub not in nonov_memo:
                    nonov_memo[sub] = c.count(sub)
                table[(start, end)] = nonov_memo[sub]
    return table
