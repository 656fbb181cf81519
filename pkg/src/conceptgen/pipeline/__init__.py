"""End-to-end orchestration, review persistence, and the HTTP service."""

from .run import (
    PipelineConfig,
    base_input,
    labeled_for_scheme,
    role_labeled,
    run_pipeline,
    training_pairs,
)
from .store import (
    Candidate,
    ItemRecord,
    ItemStatus,
    ItemStore,
    ReviewRecord,
    export_accepted,
)

__all__ = [
    "PipelineConfig",
    "base_input",
    "labeled_for_scheme",
    "role_labeled",
    "run_pipeline",
    "training_pairs",
    "Candidate",
    "ItemRecord",
    "ItemStatus",
    "ItemStore",
    "ReviewRecord",
    "export_accepted",
]
