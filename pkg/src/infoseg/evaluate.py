"""Paired scoring of the two counting methods and the exact McNemar test.

Every evaluated test string lands in one of four cases: both methods
correct, only overlapping correct, only non-overlapping correct, or
neither.  The discordant counts b (overlapping only) and c
(non-overlapping only) carry all the information about the difference
between the methods; the exact one-sided McNemar test computes

    p = 2^-(b+c) * sum_{k=0}^{min(b,c)} C(b+c, k)

in log-space, since individual binomial terms underflow doubles long
before the tail sum does.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .counting import CountingMethod
from .ingest import Dataset
from .sax import SymbolString, as_text


@dataclass(frozen=True)
class FourCaseTally:
    """Cross-classification of correctness under the two methods."""

    case1: int  # both correct
    case2: int  # only overlapping correct (b)
    case3: int  # only non-overlapping correct (c)
    case4: int  # neither correct

    def __post_init__(self):
        if min(self.case1, self.case2, self.case3, self.case4) < 0:
            raise ValueError("tally counts must be non-negative")

    @property
    def total(self) -> int:
        return self.case1 + self.case2 + self.case3 + self.case4

    @property
    def b(self) -> int:
        return self.case2

    @property
    def c(self) -> int:
        return self.case3

    @property
    def correct_overlap(self) -> int:
        return self.case1 + self.case2

    @property
    def correct_nonoverlap(self) -> int:
        return self.case1 + self.case3

    @property
    def incorrect_overlap(self) -> int:
        return self.case3 + self.case4

    @property
    def incorrect_nonoverlap(self) -> int:
        return self.case2 + self.case4

    def __add__(self, other: "FourCaseTally") -> "FourCaseTally":
        return FourCaseTally(
            self.case1 + other.case1,
            self.case2 + other.case2,
            self.case3 + other.case3,
            self.case4 + other.case4,
        )

    def as_dict(self) -> dict[str, int]:
        return {
            "case1": self.case1,
            "case2": self.case2,
            "case3": self.case3,
            "case4": self.case4,
        }


def tally_cases(results: Iterable[tuple[str, str, str]]) -> FourCaseTally:
    """Tally (truth, overlapping prediction, non-overlapping prediction) rows."""
    c1 = c2 = c3 = c4 = 0
    for truth, pred_ov, pred_nonov in results:
        ov_ok = pred_ov == truth
        nonov_ok = pred_nonov == truth
        if ov_ok and nonov_ok:
            c1 += 1
        elif ov_ok:
            c2 += 1
        elif nonov_ok:
            c3 += 1
        else:
            c4 += 1
    return FourCaseTally(c1, c2, c3, c4)


def mcnemar_exact(b: int, c: int) -> float:
    """One-sided exact binomial tail probability of the discordant counts.

    Terms are accumulated smallest-first relative to the largest, via
    log-gamma binomial coefficients, so the result stays accurate even
    when b + c is in the thousands.
    """
    if b < 0 or c < 0:
        raise ValueError("b and c must be non-negative")
    n = b + c
    if n == 0:
        return 1.0
    m = min(b, c)
    log2 = math.log(2.0)

    def log_term(k: int) -> float:
        return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1) - n * log2

    # Terms grow with k up to n/2, so the k == m term dominates.
    peak = log_term(m)
    acc = math.fsum(math.exp(log_term(k) - peak) for k in range(m + 1))
    return min(1.0, math.exp(peak + math.log(acc)))


def size_raw_length(s: SymbolString | str) -> float:
    """Reference size function: symbol count."""
    return float(len(as_text(s)))


def size_distinct_symbols(s: SymbolString | str) -> float:
    """Reference size function: number of distinct symbols."""
    return float(len(set(as_text(s))))


def cdm(x: SymbolString | str, y: SymbolString | str,
        size_fn: Callable[[str], float]) -> float:
    """Compression-based dissimilarity: size of the concatenation over
    the summed individual sizes, for an injected size function."""
    xs, ys = as_text(x), as_text(y)
    if not xs or not ys:
        raise ValueError("cdm requires non-empty strings")
    sizes = [size_fn(xs + ys), size_fn(xs), size_fn(ys)]
    if min(sizes) <= 0:
        raise ValueError("size function must be positive")
    return sizes[0] / (sizes[1] + sizes[2])


REPORT_COLUMNS = (
    "dataset",
    "n_classes",
    "n_test",
    "series_length",
    "correct_overlap",
    "correct_nonoverlap",
)


@dataclass(frozen=True)
class DatasetReport:
    """One dataset's scores in the layout of the comparison table."""

    name: str
    n_test: int
    correct_overlap: int | None
    correct_nonoverlap: int | None
    tally: FourCaseTally | None
    n_classes: int | None = None
    series_length: int | None = None

    def _check(self):
        if self.tally is not None:
            if self.tally.total != self.n_test:
                raise ValueError("tally does not cover every test string")
            if self.correct_overlap != self.tally.correct_overlap:
                raise ValueError("correct_overlap inconsistent with tally")
            if self.correct_nonoverlap != self.tally.correct_nonoverlap:
                raise ValueError("correct_nonoverlap inconsistent with tally")

    def to_csv_row(self) -> list:
        self._check()
        return [
            self.name,
            self.n_classes if self.n_classes is not None else "",
            self.n_test,
            self.series_length if self.series_length is not None else "",
            self.correct_overlap if self.correct_overlap is not None else "",
            self.correct_nonoverlap if self.correct_nonoverlap is not None else "",
        ]

    def to_csv(self) -> str:
        """Header plus this report's row."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        writer.writerow(self.to_csv_row())
        return buf.getvalue()

    def as_dict(self) -> dict:
        self._check()
        out: dict = {
            "dataset": self.name,
            "n_classes": self.n_classes,
            "n_test": self.n_test,
            "series_length": self.series_length,
            "correct_overlap": self.correct_overlap,
            "correct_nonoverlap": self.correct_nonoverlap,
        }
        out["tally"] = self.tally.as_dict() if self.tally is not None else None
        return out


def dataset_report(dataset: Dataset,
                   predictions: Mapping[CountingMethod, Sequence[str]]) -> DatasetReport:
    """Score per-method predictions over a dataset's test records."""
    truths = [ts.label for ts in dataset.test]
    for method, preds in predictions.items():
        if len(preds) != len(truths):
            raise ValueError(
                f"{method.value}: {len(preds)} predictions for {len(truths)} test records"
            )
    pred_ov = predictions.get(CountingMethod.OVERLAPPING)
    pred_nonov = predictions.get(CountingMethod.NONOVERLAPPING)
    tally = None
    if pred_ov is not None and pred_nonov is not None:
        tally = tally_cases(zip(truths, pred_ov, pred_nonov))
    correct_ov = (
        sum(p == t for p, t in zip(pred_ov, truths)) if pred_ov is not None else None
    )
    correct_nonov = (
        sum(p == t for p, t in zip(pred_nonov, truths)) if pred_nonov is not None else None
    )
    return DatasetReport(
        name=dataset.name,
        n_test=len(truths),
        correct_overlap=correct_ov,
        correct_nonoverlap=correct_nonov,
        tally=tally,
        n_classes=len(dataset.classes),
        series_length=dataset.series_length,
    )
