"""Reference-free evaluation of generation batches."""

from .ngram import SentenceScorer, TrigramScorer, UniformScorer
from .tfidf import TfidfTable
from .report import (
    GenerationRecord,
    MetricReport,
    coverage,
    diversity,
    mean_length,
    perplexity,
    read_records,
    report,
    srl_overlap,
    write_records,
)

__all__ = [
    "SentenceScorer",
    "TrigramScorer",
    "UniformScorer",
    "TfidfTable",
    "GenerationRecord",
    "MetricReport",
    "coverage",
    "diversity",
    "mean_length",
    "perplexity",
    "read_records",
    "report",
    "srl_overlap",
    "write_records",
]
