from .config import ModelConfig, ModelKind, SeedSpec, validate_config
from .custom import RuleSet, parse_rules
from .engine import run_custom, run_dual, run_model
from .ground_truth import ingest_ground_truth
from .seeds import select_seeds
from .trace import IterationTrace, TraceEntry, parse_trace_document

__all__ = [
    "IterationTrace",
    "ModelConfig",
    "ModelKind",
    "RuleSet",
    "SeedSpec",
    "TraceEntry",
    "ingest_ground_truth",
    "parse_rules",
    "parse_trace_document",
    "run_custom",
    "run_dual",
    "run_model",
    "select_seeds",
    "validate_config",
]
