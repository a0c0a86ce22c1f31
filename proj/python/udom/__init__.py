"""Probabilistic domination counts on uncertain objects."""

from ._core import (
    Error,
    IdcaResult,
    UncertainObject,
    certain_object,
    dominates,
    exact_pdf,
    expected_rank,
    generate_synthetic,
    gf_exact,
    idca,
    knn,
    load_dataset,
    mc_pdf,
    rknn,
    save_jsonl,
    ugf_bounds,
)

__all__ = [
    "Error",
    "IdcaResult",
    "UncertainObject",
    "certain_object",
    "dominates",
    "exact_pdf",
    "expected_rank",
    "generate_synthetic",
    "gf_exact",
    "idca",
    "knn",
    "load_dataset",
    "mc_pdf",
    "rknn",
    "save_jsonl",
    "ugf_bounds",
]
