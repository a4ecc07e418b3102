"""Diverse decoding, sentence merging, and extractiveness metrics."""

from ._divsum import (
    TableModel,
    decode_and_merge,
    extraction_penalty,
    extraction_report,
    merge_candidates,
    plagiarism_score,
    rouge_scores,
    split_sentences,
    token_spans,
    tokenize,
)

__version__ = "0.1.0"

__all__ = [
    "TableModel",
    "decode_and_merge",
    "extraction_penalty",
    "extraction_report",
    "merge_candidates",
    "plagiarism_score",
    "rouge_scores",
    "split_sentences",
    "token_spans",
    "tokenize",
]
