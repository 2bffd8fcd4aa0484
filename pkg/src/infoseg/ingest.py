"""Reading labeled time-series files and assembling per-class corpora.

The on-disk format is one record per line: a class label in the first
field, then the numeric samples, comma- or tab-delimited.  Class corpora
are built by concatenating every encoded training string of the class in
file order, with a reserved separator between records so that no counted
substring spans a record boundary.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .sax import SEPARATOR, SymbolString

logger = logging.getLogger(__name__)


class UcrFormatError(ValueError):
    """Raised for unreadable or malformed record files."""


@dataclass(frozen=True)
class TimeSeries:
    """One labeled record: a class label and its ordered samples."""

    label: str
    values: tuple[float, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("time series must contain at least one value")
        for v in self.values:
            if not math.isfinite(v):
                raise ValueError(f"non-finite sample in series labeled {self.label!r}")

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Dataset:
    """A named train/test split with the ordered set of training labels."""

    name: str
    train: tuple[TimeSeries, ...]
    test: tuple[TimeSeries, ...]

    @property
    def classes(self) -> tuple[str, ...]:
        return tuple(sorted({ts.label for ts in self.train}))

    @property
    def series_length(self) -> int | None:
        """Common series length, or None if records disagree."""
        lengths = {len(ts) for ts in self.train} | {len(ts) for ts in self.test}
        return lengths.pop() if len(lengths) == 1 else None

    def __post_init__(self):
        known = {ts.label for ts in self.train}
        for ts in self.test:
            if ts.label not in known:
                logger.warning(
                    "dataset %s: test label %r has no training records", self.name, ts.label
                )


@dataclass(frozen=True)
class ClassCorpus:
    """The long class string counted against during classification.

    ``effective_length`` excludes separators: they are artifacts of
    corpus assembly, not observed symbols, and probability denominators
    must not count them.
    """

    label: str
    corpus: SymbolString

    @property
    def effective_length(self) -> int:
        return len(self.corpus.text) - self.corpus.text.count(SEPARATOR)


def _detect_delimiter(sample_line: str) -> str:
    # Tab first: tab-delimited data may still contain commas in labels.
    if "\t" in sample_line:
        return "\t"
    return ","


def parse_ucr_file(path: str | Path, delimiter: str = "auto") -> list[TimeSeries]:
    """Parse a label-plus-samples record file.

    ``delimiter`` is one of ``auto``, ``comma``, ``tab``.  Blank lines
    are skipped; any other malformed line raises UcrFormatError with the
    line number.
    """
    path = Path(path)
    if delimiter not in ("auto", "comma", "tab"):
        raise ValueError(f"unknown delimiter {delimiter!r}")
    try:
        raw = path.read_text()
    except OSError as exc:
        raise UcrFormatError(f"cannot read {path}: {exc}") from exc

    sep: str | None = {"comma": ",", "tab": "\t", "auto": None}[delimiter]
    records: list[TimeSeries] = []
    for lineno, line in enumerate(raw.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        if sep is None:
            sep = _detect_delimiter(line)
        fields = line.split(sep)
        if len(fields) < 2:
            raise UcrFormatError(f"{path}:{lineno}: expected a label and at least one sample")
        label = fields[0].strip()
        try:
            values = tuple(float(f) for f in fields[1:])
        except ValueError as exc:
            raise UcrFormatError(f"{path}:{lineno}: non-numeric sample field: {exc}") from exc
        try:
            records.append(TimeSeries(label, values))
        except ValueError as exc:
            raise UcrFormatError(f"{path}:{lineno}: {exc}") from exc
    if not records:
        raise UcrFormatError(f"{path}: no records found")
    return records


def format_ucr_line(ts: TimeSeries, delimiter: str = "comma") -> str:
    """Render one record back to its file format (round-trips with parse)."""
    sep = {"comma": ",", "tab": "\t"}[delimiter]
    return sep.join([ts.label] + [repr(v) for v in ts.values])


def load_dataset(train_path: str | Path, test_path: str | Path, name: str,
                 delimiter: str = "auto") -> Dataset:
    train = parse_ucr_file(train_path, delimiter)
    test = parse_ucr_file(test_path, delimiter)
    return Dataset(name=name, train=tuple(train), test=tuple(test))


def build_class_corpus(encoded_train: Sequence[tuple[str, SymbolString]],
                       class_label: str, use_separator: bool = True) -> ClassCorpus:
    """Concatenate all encoded training strings of one class, in order.

    With ``use_separator`` (the default) a separator symbol is placed
    between consecutive records, preventing spurious matches that would
    otherwise straddle record boundaries.
    """
    parts = [s for label, s in encoded_train if label == class_label]
    if not parts:
        raise ValueError(f"no training strings labeled {class_label!r}")
    sigma = parts[0].alphabet_size
    joiner = SEPARATOR if use_separator else ""
    text = joiner.join(p.text for p in parts)
    return ClassCorpus(label=class_label, corpus=SymbolString(text, sigma))


def build_all_corpora(encoded_train: Sequence[tuple[str, SymbolString]],
                      classes: Iterable[str], use_separator: bool = True) -> list[ClassCorpus]:
    return [build_class_corpus(encoded_train, c, use_separator) for c in classes]


def write_encoded(path: str | Path, rows: Iterable[tuple[str, SymbolString]]) -> None:
    """Write encoded strings as ``label<TAB>symbols`` lines."""
    with open(path, "w") as fh:
        for label, s in rows:
            fh.write(f"{label}\t{s.text}\n")


def read_encoded(path: str | Path, alphabet_size: int) -> list[tuple[str, SymbolString]]:
    rows = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            label, text = line.split("\t", 1)
        except ValueError as exc:
            raise UcrFormatError(f"{path}:{lineno}: expected label<TAB>symbols") from exc
        rows.append((label, SymbolString(text, alphabet_size)))
    if not rows:
        raise UcrFormatError(f"{path}: no encoded records found")
    return rows
