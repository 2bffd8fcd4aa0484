"""End-to-end orchestration: encode datasets, classify, aggregate.

A dataset directory holds a ``*_TRAIN*`` and a ``*_TEST*`` record file
(or a previously encoded ``train.txt`` / ``test.txt`` / ``breakpoints.json``
triple, which is picked up as-is).  Classification runs both counting
methods over identical encodings in a single pass per test string, so
the paired four-case tally compares like with like.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .counting import CountingMethod, build_suffix_array
from .evaluate import (
    DatasetReport,
    FourCaseTally,
    dataset_report,
    mcnemar_exact,
    tally_cases,
)
from .infoquant import StringClassifier
from .ingest import (
    ClassCorpus,
    Dataset,
    UcrFormatError,
    build_all_corpora,
    load_dataset,
    read_encoded,
    write_encoded,
)
from .sax import Breakpoints, SaxConfig, SymbolString, encode_series, fit_breakpoints, paa

logger = logging.getLogger(__name__)

BOTH_METHODS = (CountingMethod.OVERLAPPING, CountingMethod.NONOVERLAPPING)


class PipelineError(Exception):
    """Data-level failure in the orchestration layer."""


@dataclass
class RunConfig:
    """Knobs shared by the encode / classify / compare commands."""

    datasets: list[Path]
    alphabet_size: int = 16
    word_length: int | None = None
    methods: tuple[CountingMethod, ...] = BOTH_METHODS
    use_separator: bool = True
    out_dir: Path = Path("out")
    workers: int = 1
    alpha: float = 0.05
    delimiter: str = "auto"
    max_segment_len: int | None = None

    def __post_init__(self):
        if not self.datasets:
            raise ValueError("at least one dataset path is required")
        if not 2 <= self.alphabet_size <= 26:
            raise ValueError("alphabet_size must be in [2, 26]")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    @property
    def sax(self) -> SaxConfig:
        return SaxConfig(alphabet_size=self.alphabet_size, word_length=self.word_length)


@dataclass
class EncodedDataset:
    """A dataset after symbolization, with the fit that produced it."""

    name: str
    breakpoints: Breakpoints
    train: list[tuple[str, SymbolString]]
    test: list[tuple[str, SymbolString]]
    dataset: Dataset | None = None


def find_ucr_pair(directory: Path) -> tuple[Path, Path]:
    """Locate the train/test record files inside a dataset directory."""
    train = sorted(p for p in directory.iterdir() if p.is_file() and "_TRAIN" in p.name)
    test = sorted(p for p in directory.iterdir() if p.is_file() and "_TEST" in p.name)
    if not train or not test:
        raise PipelineError(f"{directory}: expected *_TRAIN* and *_TEST* files")
    return train[0], test[0]


def encode_dataset(dataset: Dataset, config: SaxConfig) -> EncodedDataset:
    """Fit breakpoints on the pooled training values, encode both splits.

    The pool is taken after downsampling, since those are the values the
    thresholds will quantize; with the default one-symbol-per-sample
    policy it is simply every training sample.  Test data never enters
    the fit.
    """
    pool: list[float] = []
    for ts in dataset.train:
        w = len(ts.values) if config.word_length is None else config.word_length
        pool.extend(paa(ts.values, w))
    if not pool:
        raise PipelineError(f"{dataset.name}: empty training pool")
    bp = fit_breakpoints(pool, config.alphabet_size)
    train = [(ts.label, encode_series(ts.values, bp, config)) for ts in dataset.train]
    test = [(ts.label, encode_series(ts.values, bp, config)) for ts in dataset.test]
    return EncodedDataset(dataset.name, bp, train, test, dataset=dataset)


def _dataset_out_dir(config: RunConfig, name: str) -> Path:
    path = config.out_dir / name
    path.mkdir(parents=True, exist_ok=True)
    return path


def _is_encoded_dir(directory: Path) -> bool:
    return all(
        (directory / f).exists() for f in ("train.txt", "test.txt", "breakpoints.json")
    )


def load_encoded_dir(directory: Path) -> EncodedDataset:
    bounds = json.loads((directory / "breakpoints.json").read_text())
    bp = Breakpoints(tuple(float(b) for b in bounds))
    sigma = bp.alphabet_size
    return EncodedDataset(
        name=directory.name,
        breakpoints=bp,
        train=read_encoded(directory / "train.txt", sigma),
        test=read_encoded(directory / "test.txt", sigma),
    )


def prepare_dataset(path: Path, config: RunConfig) -> EncodedDataset:
    """Load a dataset directory, encoding on the fly unless pre-encoded."""
    if not path.is_dir():
        raise PipelineError(f"{path}: not a dataset directory")
    if _is_encoded_dir(path):
        logger.info("using pre-encoded dataset at %s", path)
        return load_encoded_dir(path)
    train_path, test_path = find_ucr_pair(path)
    try:
        dataset = load_dataset(train_path, test_path, name=path.name,
                               delimiter=config.delimiter)
    except UcrFormatError:
        raise
    return encode_dataset(dataset, config.sax)


def write_encoded_dataset(encoded: EncodedDataset, config: RunConfig) -> Path:
    """Write train.txt / test.txt / breakpoints.json / corpora.txt."""
    out = _dataset_out_dir(config, encoded.name)
    (out / "breakpoints.json").write_text(
        json.dumps(list(encoded.breakpoints.bounds)) + "\n"
    )
    write_encoded(out / "train.txt", encoded.train)
    write_encoded(out / "test.txt", encoded.test)
    classes = sorted({label for label, _ in encoded.train})
    corpora = build_all_corpora(encoded.train, classes, config.use_separator)
    with open(out / "corpora.txt", "w") as fh:
        for corpus in corpora:
            fh.write(f"{corpus.label}\t{corpus.corpus.text}\n")
    logger.info("encoded %s -> %s", encoded.name, out)
    return out


# Per-process state for worker pools; set by _worker_init before any task runs.
_WORKER_CLASSIFIERS: dict[str, StringClassifier] = {}


def _build_classifiers(corpora: Sequence[ClassCorpus],
                       methods: Sequence[CountingMethod],
                       max_segment_len: int | None) -> dict[str, StringClassifier]:
    # One suffix array per corpus, shared by both methods' models.
    indexes = [build_suffix_array(c.corpus) for c in corpora]
    return {
        m.value: StringClassifier(corpora, m, max_segment_len=max_segment_len,
                                  indexes=indexes)
        for m in methods
    }


def _worker_init(corpus_payload, sigma, method_tokens, max_segment_len):
    corpora = [
        ClassCorpus(label, SymbolString(text, sigma)) for label, text in corpus_payload
    ]
    methods = [CountingMethod.from_token(t) for t in method_tokens]
    _WORKER_CLASSIFIERS.clear()
    _WORKER_CLASSIFIERS.update(_build_classifiers(corpora, methods, max_segment_len))


def _worker_classify(args):
    idx, text = args
    return idx, {
        token: clf.classify(text).predicted for token, clf in _WORKER_CLASSIFIERS.items()
    }


def classify_dataset(encoded: EncodedDataset, config: RunConfig
                     ) -> dict[CountingMethod, list[str]]:
    """Predict every test string under each requested method.

    With ``workers > 1`` test strings are classified in a process pool;
    results are merged back in input order, so worker count can never
    change an emitted number.
    """
    labels = sorted({label for label, _ in encoded.train})
    if not labels:
        raise PipelineError(f"{encoded.name}: no training records")
    if not encoded.test:
        raise PipelineError(f"{encoded.name}: empty test set")
    test_labels = {label for label, _ in encoded.test}
    corpora = build_all_corpora(encoded.train, labels, config.use_separator)
    sigma = corpora[0].corpus.alphabet_size
    missing = test_labels - set(labels)
    if missing:
        logger.warning("%s: test labels %s absent from training data",
                       encoded.name, sorted(missing))

    tasks = [(i, s.text) for i, (_, s) in enumerate(encoded.test)]
    by_token: dict[str, list[str | None]] = {
        m.value: [None] * len(tasks) for m in config.methods
    }
    if config.workers == 1:
        classifiers = _build_classifiers(corpora, config.methods, config.max_segment_len)
        for idx, text in tasks:
            for token, clf in classifiers.items():
                by_token[token][idx] = clf.classify(text).predicted
    else:
        payload = [(c.label, c.corpus.text) for c in corpora]
        tokens = [m.value for m in config.methods]
        with ProcessPoolExecutor(
            max_workers=config.workers,
            initializer=_worker_init,
            initargs=(payload, sigma, tokens, config.max_segment_len),
        ) as pool:
            chunk = max(1, len(tasks) // (config.workers * 4))
            for idx, preds in pool.map(_worker_classify, tasks, chunksize=chunk):
                for token, label in preds.items():
                    by_token[token][idx] = label
    return {CountingMethod.from_token(t): preds for t, preds in by_token.items()}


def run_classify(path: Path, config: RunConfig) -> DatasetReport:
    """Classify one dataset directory and write its report files."""
    encoded = prepare_dataset(path, config)
    predictions = classify_dataset(encoded, config)
    if encoded.dataset is not None:
        report = dataset_report(encoded.dataset, predictions)
    else:
        truths = [label for label, _ in encoded.test]
        report = _report_from_rows(encoded, truths, predictions)
    out = _dataset_out_dir(config, encoded.name)
    (out / "report.csv").write_text(report.to_csv())
    payload = report.as_dict()
    payload["predictions"] = {m.value: preds for m, preds in predictions.items()}
    payload["truths"] = [label for label, _ in encoded.test]
    (out / "report.json").write_text(json.dumps(payload, indent=2) + "\n")
    logger.info("classified %s: %s", encoded.name, report.to_csv_row())
    return report


def _report_from_rows(encoded: EncodedDataset, truths: list[str],
                      predictions: dict[CountingMethod, list[str]]) -> DatasetReport:
    pred_ov = predictions.get(CountingMethod.OVERLAPPING)
    pred_nonov = predictions.get(CountingMethod.NONOVERLAPPING)
    tally = None
    if pred_ov is not None and pred_nonov is not None:
        tally = tally_cases(zip(truths, pred_ov, pred_nonov))
    lengths = {len(s) for _, s in encoded.train} | {len(s) for _, s in encoded.test}
    return DatasetReport(
        name=encoded.name,
        n_test=len(truths),
        correct_overlap=None if pred_ov is None else sum(
            p == t for p, t in zip(pred_ov, truths)),
        correct_nonoverlap=None if pred_nonov is None else sum(
            p == t for p, t in zip(pred_nonov, truths)),
        tally=tally,
        n_classes=len({label for label, _ in encoded.train}),
        series_length=lengths.pop() if len(lengths) == 1 else None,
    )


def load_reports(out_dir: Path) -> list[dict]:
    reports = []
    for path in sorted(out_dir.glob("*/report.json")):
        reports.append(json.loads(path.read_text()))
    if not reports:
        raise PipelineError(f"no report.json files under {out_dir}")
    return reports


def compare_reports(out_dir: Path, alpha: float = 0.05) -> dict:
    """Sum the four-case tallies across datasets and run the exact test."""
    reports = load_reports(out_dir)
    total = FourCaseTally(0, 0, 0, 0)
    for rep in reports:
        if rep.get("tally") is None:
            raise PipelineError(
                f"{rep.get('dataset')}: report lacks a paired tally; "
                "classify with both methods before comparing"
            )
        total = total + FourCaseTally(**rep["tally"])
    p = mcnemar_exact(total.b, total.c)
    summary = {
        "datasets": [rep["dataset"] for rep in reports],
        "n_test": total.total,
        "tally": total.as_dict(),
        "b": total.b,
        "c": total.c,
        "p": p,
        "alpha": alpha,
        "significant": p < alpha,
    }
    (out_dir / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    return summary
