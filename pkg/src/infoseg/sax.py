"""Symbolic encoding of real-valued series.

A series is downsampled to ``w`` frame means (piecewise aggregate
approximation) and each mean is mapped to a letter through empirical
equal-frequency thresholds fitted on a training pool.  With ``w == n``
the downsampling step is the identity and every sample becomes one
symbol.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

#: Letters used to render symbol indices; index 0 -> 'a'.
ALPHABET = "abcdefghijklmnopqrstuvwxyz"

#: Reserved rendering for the out-of-alphabet separator symbol.
SEPARATOR = "|"

MAX_ALPHABET = len(ALPHABET)


@dataclass(frozen=True)
class SymbolString:
    """Immutable symbol sequence rendered as text.

    ``text`` holds one character per symbol: letters ``'a'..`` for
    alphabet symbols and ``'|'`` for the separator.  The separator is
    outside the alphabet, so no substring match can span it.
    """

    text: str
    alphabet_size: int = MAX_ALPHABET

    def __post_init__(self):
        if not 2 <= self.alphabet_size <= MAX_ALPHABET:
            raise ValueError(
                f"alphabet_size must be in [2, {MAX_ALPHABET}], got {self.alphabet_size}"
            )
        allowed = ALPHABET[: self.alphabet_size]
        for ch in self.text:
            if ch not in allowed and ch != SEPARATOR:
                raise ValueError(f"symbol {ch!r} outside alphabet of size {self.alphabet_size}")

    @classmethod
    def from_indices(cls, indices: Iterable[int], alphabet_size: int) -> "SymbolString":
        """Build from integer symbol indices; index == alphabet_size is the separator."""
        chars = []
        for i in indices:
            i = int(i)
            if i == alphabet_size:
                chars.append(SEPARATOR)
            elif 0 <= i < alphabet_size:
                chars.append(ALPHABET[i])
            else:
                raise ValueError(f"symbol index {i} out of range for alphabet size {alphabet_size}")
        return cls("".join(chars), alphabet_size)

    @property
    def symbols(self) -> tuple[int, ...]:
        """Integer indices; the separator maps to ``alphabet_size``."""
        return tuple(
            self.alphabet_size if ch == SEPARATOR else ord(ch) - ord("a") for ch in self.text
        )

    @property
    def has_separator(self) -> bool:
        return SEPARATOR in self.text

    def __len__(self) -> int:
        return len(self.text)

    def __str__(self) -> str:
        return self.text


def as_text(s: "SymbolString | str") -> str:
    """Accept either a SymbolString or its rendered text."""
    return s.text if isinstance(s, SymbolString) else s


@dataclass(frozen=True)
class SaxConfig:
    """Encoding parameters.

    ``word_length=None`` means one symbol per sample (w = n), the
    default used throughout the classification pipeline.
    """

    alphabet_size: int = 16
    word_length: int | None = None

    def __post_init__(self):
        if not 2 <= self.alphabet_size <= MAX_ALPHABET:
            raise ValueError(f"alphabet_size must be in [2, {MAX_ALPHABET}]")
        if self.word_length is not None and self.word_length < 1:
            raise ValueError("word_length must be >= 1")


@dataclass(frozen=True)
class Breakpoints:
    """Ascending quantization thresholds; len(bounds) + 1 symbols."""

    bounds: tuple[float, ...]

    def __post_init__(self):
        for a, b in zip(self.bounds, self.bounds[1:]):
            if b < a:
                raise ValueError("breakpoint bounds must be non-decreasing")

    @property
    def alphabet_size(self) -> int:
        return len(self.bounds) + 1


def paa(values: Sequence[float], w: int) -> list[float]:
    """Downsample to ``w`` frame means over equal-width frames.

    When ``w`` does not divide ``n`` a sample's weight is split across
    the frames it straddles, in proportion to the overlap.  Equivalent
    to averaging the sample step function over each of the ``w`` frames,
    so the overall mean is conserved.
    """
    n = len(values)
    if not 1 <= w <= n:
        raise ValueError(f"w must satisfy 1 <= w <= {n}, got {w}")
    if w == n:
        return [float(v) for v in values]
    arr = np.asarray(values, dtype=float)
    if n % w == 0:
        means = arr.reshape(w, n // w).mean(axis=1)
    else:
        # Repeating each sample w times puts frame boundaries on integer
        # positions of the expanded grid, which realizes the fractional
        # weights exactly.
        means = np.repeat(arr, w).reshape(w, n).mean(axis=1)
    return means.tolist()


def fit_breakpoints(pool: Sequence[float], sigma: int) -> Breakpoints:
    """Fit sigma-1 equal-frequency thresholds on a value pool.

    Bound k is the (k+1)/sigma empirical quantile under the midpoint
    convention: cuts landing exactly between two order statistics take
    their average, otherwise the next order statistic is used.  Cut
    positions are computed in integer arithmetic so results do not
    depend on floating-point quirks of the quantile fraction.
    """
    if sigma < 2:
        raise ValueError("sigma must be >= 2")
    ordered = sorted(float(v) for v in pool)
    n = len(ordered)
    if n == 0:
        raise ValueError("cannot fit breakpoints on an empty pool")
    bounds = []
    for k in range(1, sigma):
        m, r = divmod(k * n, sigma)
        if r == 0:
            bounds.append((ordered[m - 1] + ordered[m]) / 2.0 if m < n else ordered[-1])
        else:
            bounds.append(ordered[m])
    return Breakpoints(tuple(bounds))


def quantize(values: Sequence[float], bp: Breakpoints) -> SymbolString:
    """Map each value to the count of bounds strictly below it.

    A value lying exactly on a bound maps to the lower symbol, which
    keeps quantization total and deterministic in the presence of ties.
    """
    bounds = np.asarray(bp.bounds, dtype=float)
    arr = np.asarray(values, dtype=float)
    idx = np.searchsorted(bounds, arr, side="left")
    return SymbolString.from_indices(idx.tolist(), bp.alphabet_size)


def quantize_value(value: float, bp: Breakpoints) -> int:
    """Symbol index for a single value (ties at a bound map down)."""
    return bisect.bisect_left(bp.bounds, value)


def encode_series(values: Sequence[float], bp: Breakpoints, config: SaxConfig) -> SymbolString:
    """PAA then quantize one series under a shared breakpoint fit."""
    w = len(values) if config.word_length is None else config.word_length
    return quantize(paa(values, w), bp)
