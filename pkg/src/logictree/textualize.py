"""Textualized trees and instruction prompts.

A logic tree becomes an ordered table of (left argument, relation
connective, right argument) rows, deepest rows first, so a reader moves
from local relations to the global one. The detection and classification
prompt templates embed the fallacy names and one-line definitions for the
chosen dataset, and optionally the rendered table.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .logic_tree import Internal, Leaf, LogicTree
from .taxonomy import RelationType

DETECTION_DATASETS = ("argotario", "reddit", "climate")
CLASSIFICATION_DATASETS = ("argotario", "reddit", "logic", "climate")

TABLE_HEADER = "argument 1, logical relation, argument 2"


@dataclass(frozen=True)
class Triplet:
    left_text: str
    relation: RelationType
    connective: str
    right_text: str
    depth: int


def to_triplets(tree: LogicTree) -> list[Triplet]:
    """One row per internal node, deepest first, left-to-right within a depth."""
    rows: list[tuple[int, int, Triplet]] = []

    def walk(node: LogicTree, depth: int) -> None:
        if isinstance(node, Leaf):
            return
        rows.append(
            (
                depth,
                node.connective_span[0],
                Triplet(
                    left_text=node.left.text,
                    relation=node.relation,
                    connective=node.connective,
                    right_text=node.right.text,
                    depth=depth,
                ),
            )
        )
        walk(node.left, depth + 1)
        walk(node.right, depth + 1)

    walk(tree, 0)
    rows.sort(key=lambda item: (-item[0], item[1]))
    return [row for _, _, row in rows]


def render_table(table: Sequence[Triplet]) -> str:
    """Header plus one pipe-delimited line per row; 'none' when empty."""
    lines = [TABLE_HEADER]
    if not table:
        lines.append("none")
    else:
        for row in table:
            lines.append(
                f"{row.left_text} | {row.relation.value} ({row.connective}) | {row.right_text}"
            )
    return "\n".join(lines)


@dataclass(frozen=True)
class FallacyCatalog:
    """Fallacy names, definitions, aliases, and per-dataset name lists."""

    definitions: dict[str, str]
    aliases: dict[str, str]  # alias -> canonical, keys as written
    dataset_names: dict[str, tuple[str, ...]]

    def names_for(self, dataset: str) -> tuple[str, ...]:
        try:
            return self.dataset_names[dataset]
        except KeyError:
            raise ValueError(f"unknown dataset '{dataset}'") from None

    def definition(self, name: str) -> str:
        return self.definitions[name]

    def alias_pairs(self) -> list[tuple[str, str]]:
        return sorted(self.aliases.items())


def load_catalog(source: Optional[str | Path] = None) -> FallacyCatalog:
    """Load the fallacy catalog; the bundled one covers the four datasets."""
    if source is None:
        raw = (
            resources.files("logictree").joinpath("data/fallacies.json").read_text("utf-8")
        )
    else:
        raw = Path(source).read_text("utf-8")
    data = json.loads(raw)
    definitions: dict[str, str] = {}
    aliases: dict[str, str] = {}
    for record in data["fallacies"]:
        name = record["name"]
        definitions[name] = record["definition"]
        for alias in record.get("aliases", []):
            aliases[alias] = name
    dataset_names = {
        dataset: tuple(names) for dataset, names in data["dataset_order"].items()
    }
    for dataset, names in dataset_names.items():
        missing = [n for n in names if n not in definitions]
        if missing:
            raise ValueError(f"catalog lists undefined fallacies for {dataset}: {missing}")
    return FallacyCatalog(
        definitions=definitions, aliases=aliases, dataset_names=dataset_names
    )


@dataclass(frozen=True)
class CotExample:
    """Worked example for the chain-of-thought prompt scaffold."""

    text: str
    explanation: str
    label: str


def _definitions_inline(catalog: FallacyCatalog, dataset: str) -> str:
    names = catalog.names_for(dataset)
    return ", ".join(f"{name} ({catalog.definition(name).rstrip('.')})" for name in names)


def _definitions_listing(catalog: FallacyCatalog, dataset: str) -> str:
    names = catalog.names_for(dataset)
    return " ".join(f"{name}: {catalog.definition(name)}" for name in names)


def _table_sentence(table: Sequence[Triplet]) -> str:
    return (
        "The logical relations in the Text are presented in this table:\n"
        f"{render_table(table)}\n"
    )


def _cot_block(cot: CotExample) -> str:
    return (
        "Let's think step by step. Firstly, explain the logical relations and "
        "logical structure in the text. Secondly, choose the answer. Please "
        "mimic the output style in the Example. "
        f"Example: {cot.text}. Output: Firstly, explain the logical relations "
        f"and logical structure in the text. {cot.explanation}. Secondly, "
        f"choose the answer. Answer: {cot.label}.  "
    )


def build_detection_prompt(
    text: str,
    table: Sequence[Triplet],
    catalog: FallacyCatalog,
    dataset: str,
    with_tree: bool,
    cot: Optional[CotExample] = None,
) -> str:
    """Detection instruction prompt (yes/no answer).

    Defined for the datasets that have a no-fallacy class; the Logic dataset
    is classification-only.
    """
    if dataset not in DETECTION_DATASETS:
        raise ValueError(
            f"detection is not defined for dataset '{dataset}'"
            f" (choose from {', '.join(DETECTION_DATASETS)})"
        )
    parts = [
        "The task is to detect whether the Text contains logical fallacy or not. ",
        f"The logical fallacy can be {_definitions_inline(catalog, dataset)}. ",
    ]
    if with_tree:
        parts.append(_table_sentence(table))
    parts.append(
        "Please answer Yes if the Text contains logical fallacy, else answer No. "
    )
    if cot is not None:
        parts.append(_cot_block(cot))
        parts.append(f"Text: {text}. Output:")
    else:
        parts.append(f"Text: {text}. Answer:")
    return "".join(parts)


def build_classification_prompt(
    text: str,
    table: Sequence[Triplet],
    catalog: FallacyCatalog,
    dataset: str,
    with_tree: bool,
    cot: Optional[CotExample] = None,
) -> str:
    """Classification instruction prompt (one fallacy name as answer)."""
    if dataset not in CLASSIFICATION_DATASETS:
        raise ValueError(
            f"unknown dataset '{dataset}'"
            f" (choose from {', '.join(CLASSIFICATION_DATASETS)})"
        )
    names = catalog.names_for(dataset)
    parts = [
        "The task is to classify the fallacy type of the Text. ",
        f"Choose one answer from these fallacy types: {', '.join(names)}. ",
        "The definitions of each fallacy type are as follows. ",
        f"{_definitions_listing(catalog, dataset)} ",
    ]
    if with_tree:
        parts.append(_table_sentence(table))
    parts.append("Please classify the fallacy type of the Text. ")
    if cot is not None:
        parts.append(_cot_block(cot))
        parts.append(f"Text: {text}. Output:")
    else:
        parts.append(f"Text: {text}. Answer:")
    return "".join(parts)
