"""Probability estimation and minimum-information segmentation.

A substring drawn from a class corpus is assigned probability
freq(t) / N, where N is the corpus length excluding separators and the
frequency is taken under either counting method.  The information
quantity of a test string against a corpus is the minimum, over all
2^(L-1) partitions into contiguous substrings, of the summed
-log2 probabilities of the parts.  The minimum is found by dynamic
programming over cut positions, never by materializing the partition
set, and a test string is classified to whichever class corpus yields
the fewest bits.

Unseen single symbols fall back to probability 1 / (N + sigma), so an
all-singletons partition is always finite and the minimum exists even
when the test string shares no long substring with the corpus.  Unseen
substrings of length two or more contribute infinite cost: only the
segmentation choice, not smoothing, is allowed to absorb them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .counting import CountingMethod, SuffixArray, build_suffix_array, _check_query
from .ingest import ClassCorpus
from .sax import SymbolString, as_text

#: Two per-segment sums of the same partition may associate differently.
BITS_TOLERANCE = 1e-9


class ProbabilityModel:
    """Substring probabilities of one class corpus under one method.

    The suffix array of the corpus is built on first use and shared by
    every query; non-overlapping scan results are memoized by substring
    content.  Instances are read-only after warm-up and safe to share
    across threads (memo insertions are idempotent).
    """

    def __init__(self, corpus: ClassCorpus, method: CountingMethod,
                 index: SuffixArray | None = None,
                 max_segment_len: int | None = None):
        self.corpus = corpus
        self.method = method
        self.sigma = corpus.corpus.alphabet_size
        self.effective_length = corpus.effective_length
        self.max_segment_len = max_segment_len
        self._index = index
        self._nonov_memo: dict[str, int] = {}

    @property
    def index(self) -> SuffixArray:
        if self._index is None:
            self._index = build_suffix_array(self.corpus.corpus)
        return self._index

    def _nonov_count(self, t: str) -> int:
        if t not in self._nonov_memo:
            self._nonov_memo[t] = self.corpus.corpus.text.count(t)
        return self._nonov_memo[t]

    def frequency(self, t: SymbolString | str) -> int:
        """Occurrence count of t in the corpus under this model's method."""
        q = _check_query(as_text(t))
        if self.method is CountingMethod.NONOVERLAPPING:
            return self._nonov_count(q)
        lo, hi = self.index.range_of(q)
        return hi - lo

    def _unit_backoff_bits(self) -> float:
        return math.log2(self.effective_length + self.sigma)

    def cost_bits(self, t: SymbolString | str) -> float:
        """-log2 of the estimated probability of one segment.

        Returns inf for an unseen segment longer than one symbol.
        """
        q = as_text(t)
        freq = self.frequency(q)
        if freq > 0:
            return -math.log2(freq / self.effective_length) + 0.0
        if len(q) == 1:
            return self._unit_backoff_bits()
        return math.inf

    def span_cost_lists(self, test: str) -> list[list[tuple[int, float]]]:
        """Finite segment costs for the dynamic program.

        Entry ``i`` lists ``(end, bits)`` for every segment starting at
        ``i`` with nonzero frequency, plus the backed-off unit segment
        when even the single symbol is unseen.  Extension stops at the
        first zero-frequency length: longer spans cannot reappear.
        """
        n = len(test)
        ctext = self.corpus.corpus.text
        nonov = self.method is CountingMethod.NONOVERLAPPING
        limit = n if self.max_segment_len is None else self.max_segment_len
        out: list[list[tuple[int, float]]] = []
        for i in range(n):
            lst: list[tuple[int, float]] = []
            lo, hi = 0, len(ctext)
            for j in range(i + 1, min(n, i + limit) + 1):
                lo, hi = self.index.range_of(test[i:j], lo, hi, offset=j - i - 1)
                if hi == lo:
                    if j == i + 1:
                        lst.append((j, self._unit_backoff_bits()))
                    break
                freq = self._nonov_count(test[i:j]) if nonov else hi - lo
                lst.append((j, -math.log2(freq / self.effective_length) + 0.0))
            out.append(lst)
        return out


def substring_cost(t: SymbolString | str, model: ProbabilityModel) -> float:
    """Cost in bits of one candidate segment (inf when impossible)."""
    if not as_text(t):
        raise ValueError("segment must be non-empty")
    return model.cost_bits(t)


@dataclass(frozen=True)
class SegmentationResult:
    """An optimal partition and its total information quantity."""

    test: str
    bits: float
    per_segment: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        pos = 0
        for start, end, _ in self.per_segment:
            if start != pos or end <= start:
                raise ValueError("segments must tile the test string contiguously")
            pos = end
        if pos != len(self.test):
            raise ValueError("segments must cover the whole test string")
        if abs(self.bits - math.fsum(b for _, _, b in self.per_segment)) > BITS_TOLERANCE:
            raise ValueError("total bits inconsistent with per-segment bits")

    @property
    def cuts(self) -> tuple[int, ...]:
        """All segment boundaries, including 0 and len(test)."""
        return (0,) + tuple(end for _, end, _ in self.per_segment)

    def to_dict(self) -> dict:
        return {
            "bits": self.bits,
            "segments": [
                {"text": self.test[s:e], "start": s, "end": e, "bits": b}
                for s, e, b in self.per_segment
            ],
        }


def min_information(test: SymbolString | str, model: ProbabilityModel) -> SegmentationResult:
    """Exact minimum of summed segment costs over all partitions.

    Suffix-based dynamic program: best[i] is the cheapest completion of
    test[i:], so best[0] equals the minimum over all 2^(L-1) partitions.
    Ties prefer fewer segments, then the earliest cut sequence; the
    reconstruction walks left to right taking the first segment whose
    cost recombines exactly to the stored optimum.
    """
    t = _check_query(as_text(test))
    n = len(t)
    spans = model.span_cost_lists(t)

    suf_bits = [math.inf] * (n + 1)
    suf_segs = [0] * (n + 1)
    suf_bits[n] = 0.0
    for i in range(n - 1, -1, -1):
        best_b, best_s = math.inf, 0
        for j, cost in spans[i]:
            nb = cost + suf_bits[j]
            ns = 1 + suf_segs[j]
            if nb < best_b or (nb == best_b and ns < best_s):
                best_b, best_s = nb, ns
        suf_bits[i], suf_segs[i] = best_b, best_s

    segments: list[tuple[int, int, float]] = []
    i = 0
    while i < n:
        for j, cost in spans[i]:
            if cost + suf_bits[j] == suf_bits[i] and 1 + suf_segs[j] == suf_segs[i]:
                segments.append((i, j, cost))
                i = j
                break
        else:  # pragma: no cover - DP always leaves a consistent path
            raise AssertionError("segmentation reconstruction failed")
    return SegmentationResult(test=t, bits=suf_bits[0], per_segment=tuple(segments))


@dataclass(frozen=True)
class Classification:
    """Predicted class and the per-class information quantities."""

    predicted: str
    per_class_bits: dict[str, float]


class StringClassifier:
    """Reusable classifier holding one probability model per class."""

    def __init__(self, corpora: Sequence[ClassCorpus], method: CountingMethod,
                 max_segment_len: int | None = None,
                 indexes: Sequence[SuffixArray] | None = None):
        if not corpora:
            raise ValueError("at least one class corpus is required")
        if indexes is None:
            indexes = [None] * len(corpora)
        self.method = method
        self.models = [
            ProbabilityModel(c, method, index=ix, max_segment_len=max_segment_len)
            for c, ix in zip(corpora, indexes)
        ]

    def classify(self, test: SymbolString | str) -> Classification:
        per_class: dict[str, float] = {}
        best_label: str | None = None
        for model in self.models:
            bits = min_information(test, model).bits
            per_class[model.corpus.label] = bits
            if best_label is None or bits < per_class[best_label]:
                best_label = model.corpus.label
        return Classification(predicted=best_label, per_class_bits=per_class)


def classify(test: SymbolString | str, corpora: Sequence[ClassCorpus],
             method: CountingMethod) -> Classification:
    """One-shot classification; argmin of bits, first class wins ties."""
    return StringClassifier(corpora, method).classify(test)
