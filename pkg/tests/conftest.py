"""Shared helpers: synthetic dataset writers and independent oracles."""

import math
import random
from fractions import Fraction
from pathlib import Path

import pytest

# Numeric value assigned to each symbol when writing raw record files.
# Pools built from these map back to the same symbols under a balanced
# equal-frequency fit, letting tests design datasets at the symbol level.
SYMBOL_VALUES = {"a": 0.0, "b": 1.0, "c": 2.0, "d": 3.0}


def write_ucr_dir(root: Path, name: str, train_rows, test_rows, delimiter=","):
    """Write ``<root>/<name>/<name>_{TRAIN,TEST}.txt`` from (label, values) rows."""
    d = root / name
    d.mkdir(parents=True, exist_ok=True)
    splits = {"TRAIN": train_rows, "TEST": test_rows}
    for split, rows in splits.items():
        lines = [
            delimiter.join([label] + [repr(float(v)) for v in values])
            for label, values in rows
        ]
        (d / f"{name}_{split}.txt").write_text("\n".join(lines) + "\n")
    return d


def rows_from_symbols(rows):
    """Translate (label, symbol-string) rows into numeric (label, values) rows."""
    return [(label, [SYMBOL_VALUES[ch] for ch in s]) for label, s in rows]


def periodic_dataset_rows(noise_rate: float, seed: int, length: int = 32,
                          per_class: int = 50):
    """Two periodic classes on disjoint symbol pairs; optional symbol flips.

    Class 1 alternates the values for a/b, class 2 those for c/d, so the
    pooled training values are exactly balanced and quantize back to the
    intended symbols.  Noise applies to test rows only.
    """
    rng = random.Random(seed)
    values = sorted(SYMBOL_VALUES.values())
    patterns = {"1": (SYMBOL_VALUES["a"], SYMBOL_VALUES["b"]),
                "2": (SYMBOL_VALUES["c"], SYMBOL_VALUES["d"])}

    def series(label, noisy):
        lo, hi = patterns[label]
        vals = [lo if i % 2 == 0 else hi for i in range(length)]
        if noisy:
            vals = [rng.choice(values) if rng.random() < noise_rate else v
                    for v in vals]
        return vals

    train = [(label, series(label, False))
             for label in ("1", "2") for _ in range(per_class)]
    test = [(label, series(label, noise_rate > 0))
            for label in ("1", "2") for _ in range(per_class)]
    return train, test


# Two almost-aligned periodic classes whose phase slips make the two
# counting methods disagree on one test record (overlapping 3 correct,
# non-overlapping 4).
MOIRE_TRAIN = [("1", "abababab"), ("2", "aababbab")]
MOIRE_TEST = [("1", "abababab"), ("2", "aababbab"), ("2", "abbabbab"), ("1", "aaababab")]


def write_moire_dataset(root: Path) -> Path:
    return write_ucr_dir(root, "moire",
                         rows_from_symbols(MOIRE_TRAIN),
                         rows_from_symbols(MOIRE_TEST))


# ---------------------------------------------------------------------------
# Independent oracles.  These deliberately avoid the library's fast paths.

def naive_count_overlapping(query: str, data: str) -> int:
    """Slice comparison at every start position."""
    m = len(query)
    return sum(1 for i in range(len(data) - m + 1) if data[i:i + m] == query)


def max_disjoint_occurrences(query: str, data: str) -> int:
    """Maximum pairwise-disjoint occurrence packing, by position DP."""
    n, m = len(data), len(query)
    best = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        best[i] = best[i + 1]
        if m and data[i:i + m] == query:  # a match implies i + m <= n
            best[i] = max(best[i], 1 + best[i + m])
    return best[0]


def brute_force_suffix_order(text: str):
    return sorted(range(len(text)), key=lambda i: text[i:])


def greedy_count(query: str, data: str) -> int:
    """Leftmost greedy scan, written out longhand."""
    i = found = 0
    while i <= len(data) - len(query):
        if data[i:i + len(query)] == query:
            found += 1
            i += len(query)
        else:
            i += 1
    return found


def oracle_min_bits(test: str, corpus_text: str, method_overlapping: bool,
                    sigma: int) -> float:
    """Minimum summed segment cost over every one of the 2^(L-1)
    partitions, materialized explicitly with naive counting."""
    n = len(test)
    eff = len(corpus_text) - corpus_text.count("|")
    counter = naive_count_overlapping if method_overlapping else greedy_count
    cache = {}

    def seg_cost(seg):
        if seg not in cache:
            freq = counter(seg, corpus_text)
            if freq > 0:
                cache[seg] = -math.log2(freq / eff)
            elif len(seg) == 1:
                cache[seg] = math.log2(eff + sigma)
            else:
                cache[seg] = math.inf
        return cache[seg]

    best = math.inf
    for mask in range(1 << (n - 1)):
        cuts = [0] + [i + 1 for i in range(n - 1) if mask >> i & 1] + [n]
        total = sum(seg_cost(test[a:b]) for a, b in zip(cuts, cuts[1:]))
        best = min(best, total)
    return best


def mcnemar_rational(b: int, c: int):
    """Exact rational tail probability via integer binomials."""
    n = b + c
    if n == 0:
        return Fraction(1)
    hits = sum(math.comb(n, k) for k in range(min(b, c) + 1))
    return Fraction(hits, 2 ** n)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
