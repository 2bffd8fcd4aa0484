"""Symbol-string classification by minimum information quantity.

Time series become symbol strings through frame averaging and
equal-frequency quantization; a test string's information quantity
against each class corpus is the minimum over all segmentations of the
summed -log2 substring probabilities, with frequencies taken under
either overlapping or non-overlapping counting.  The evaluation half
scores both methods on identical inputs and compares them with the
exact McNemar test.
"""

from .counting import (
    CountingMethod,
    SuffixArray,
    all_substring_counts,
    build_suffix_array,
    count,
    count_nonoverlapping,
    count_overlapping,
    sa_count_overlapping,
)
from .evaluate import (
    DatasetReport,
    FourCaseTally,
    cdm,
    dataset_report,
    mcnemar_exact,
    size_distinct_symbols,
    size_raw_length,
    tally_cases,
)
from .infoquant import (
    Classification,
    ProbabilityModel,
    SegmentationResult,
    StringClassifier,
    classify,
    min_information,
    substring_cost,
)
from .ingest import (
    ClassCorpus,
    Dataset,
    TimeSeries,
    UcrFormatError,
    build_all_corpora,
    build_class_corpus,
    format_ucr_line,
    load_dataset,
    parse_ucr_file,
)
from .sax import (
    ALPHABET,
    SEPARATOR,
    Breakpoints,
    SaxConfig,
    SymbolString,
    encode_series,
    fit_breakpoints,
    paa,
    quantize,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHABET",
    "SEPARATOR",
    "Breakpoints",
    "Classification",
    "ClassCorpus",
    "CountingMethod",
    "Dataset",
    "DatasetReport",
    "FourCaseTally",
    "ProbabilityModel",
    "SaxConfig",
    "SegmentationResult",
    "StringClassifier",
    "SuffixArray",
    "SymbolString",
    "TimeSeries",
    "UcrFormatError",
    "all_substring_counts",
    "build_all_corpora",
    "build_class_corpus",
    "build_suffix_array",
    "cdm",
    "classify",
    "count",
    "count_nonoverlapping",
    "count_overlapping",
    "dataset_report",
    "encode_series",
    "fit_breakpoints",
    "format_ucr_line",
    "load_dataset",
    "mcnemar_exact",
    "min_information",
    "paa",
    "parse_ucr_file",
    "quantize",
    "sa_count_overlapping",
    "size_distinct_symbols",
    "size_raw_length",
    "substring_cost",
    "tally_cases",
]
