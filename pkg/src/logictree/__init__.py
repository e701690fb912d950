"""Logical structure trees for fallacy reasoning.

Builds binary trees of relation connectives over textual arguments from
constituency parses, textualizes them into prompt tables, encodes them with
relation-specific recursive encoders, and scores fallacy detection and
classification runs.
"""

from .taxonomy import RelationType, Taxonomy, load_taxonomy, longest_match
from .syntax import ConTree, leaf_text, level_order, parse_bracketed, render_bracketed
from .logic_tree import (
    Internal,
    Leaf,
    LogicTree,
    MatchSite,
    build_logic_tree,
    construct,
    extract_arguments,
    find_first_match,
)
from .textualize import (
    FallacyCatalog,
    Triplet,
    build_classification_prompt,
    build_detection_prompt,
    load_catalog,
    render_table,
    to_triplets,
)
from .encoder import (
    EncoderParams,
    VectorTable,
    encode_tree,
    grad_check,
    init_params,
    leaf_embedding,
    load_vectors,
    project,
)
from .corpus_stats import CorpusRecord, class_distribution, relation_presence
from .metrics import (
    MetricsReport,
    build_label_map,
    classification_metrics,
    detection_metrics,
    unify_label,
)
from .gateway import GatewayConfig, complete, parse_classification, parse_detection

__version__ = "0.1.0"

__all__ = [
    "RelationType",
    "Taxonomy",
    "load_taxonomy",
    "longest_match",
    "ConTree",
    "parse_bracketed",
    "render_bracketed",
    "leaf_text",
    "level_order",
    "LogicTree",
    "Leaf",
    "Internal",
    "MatchSite",
    "find_first_match",
    "extract_arguments",
    "build_logic_tree",
    "construct",
    "Triplet",
    "to_triplets",
    "render_table",
    "FallacyCatalog",
    "load_catalog",
    "build_detection_prompt",
    "build_classification_prompt",
    "VectorTable",
    "EncoderParams",
    "load_vectors",
    "leaf_embedding",
    "init_params",
    "encode_tree",
    "project",
    "grad_check",
    "CorpusRecord",
    "relation_presence",
    "class_distribution",
    "MetricsReport",
    "detection_metrics",
    "classification_metrics",
    "unify_label",
    "build_label_map",
    "GatewayConfig",
    "complete",
    "parse_detection",
    "parse_classification",
    "__version__",
]
