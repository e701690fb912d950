"""Per-class presence ratios of the ten logical relations.

For each class label, the ratio (in percent) of samples containing at least
one occurrence of each relation. Two counting modes: ``tree`` inspects the
internal nodes of built logic trees; ``raw`` counts taxonomy phrases
anywhere in the token stream. Raw counting registers every phrase matching
at every position, so a tree can never surface a relation that raw misses.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .logic_tree import Internal, LogicTree, build_logic_tree, iter_nodes
from .syntax import ConTree
from .taxonomy import RelationType, Taxonomy
from .tokenize import word_tokenize

VALID_SPLITS = ("train", "dev", "test")


@dataclass(frozen=True)
class CorpusRecord:
    id: str
    text: str
    label: str
    split: str
    trees: Optional[tuple[ConTree, ...]] = None


def read_corpus(path: str | Path) -> list[CorpusRecord]:
    """Read a JSON-lines corpus with id, text, label, split fields."""
    records: list[CorpusRecord] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            data = json.loads(line)
            missing = [k for k in ("id", "text", "label", "split") if k not in data]
            if missing:
                raise ValueError(f"{path}:{lineno}: missing fields {missing}")
            if data["split"] not in VALID_SPLITS:
                raise ValueError(
                    f"{path}:{lineno}: split must be one of {VALID_SPLITS}"
                )
            records.append(
                CorpusRecord(
                    id=str(data["id"]),
                    text=data["text"],
                    label=data["label"],
                    split=data["split"],
                )
            )
    return records


def relation_presence(tree: LogicTree) -> set[RelationType]:
    """Relations appearing on the tree's internal nodes."""
    return {
        node.relation for node, _ in iter_nodes(tree) if isinstance(node, Internal)
    }


def raw_relation_presence(tokens: Sequence[str], taxonomy: Taxonomy) -> set[RelationType]:
    """Relations of every taxonomy phrase matching anywhere in the tokens."""
    lowered = [t.lower() for t in tokens]
    present: set[RelationType] = set()
    n = len(lowered)
    for start in range(n):
        limit = min(taxonomy.max_phrase_len, n - start)
        for length in range(1, limit + 1):
            relation = taxonomy.relation_of(lowered[start : start + length])
            if relation is not None:
                present.add(relation)
    return present


@dataclass(frozen=True)
class RelationPresenceTable:
    """Ratios in percent per (class, relation) plus class sample counts."""

    ratios: dict[str, dict[RelationType, float]]
    counts: dict[str, int]
    mode: str

    def render_tsv(self) -> str:
        header = ["class", "samples"] + [rel.value for rel in RelationType]
        lines = ["\t".join(header)]
        for label in sorted(self.ratios):
            row = [label, str(self.counts[label])]
            row += [f"{self.ratios[label][rel]:.2f}" for rel in RelationType]
            lines.append("\t".join(row))
        return "\n".join(lines)


def class_distribution(
    corpus: Sequence[CorpusRecord],
    taxonomy: Taxonomy,
    mode: str = "tree",
) -> RelationPresenceTable:
    """Presence ratios per class label over the given records.

    ``tree`` mode builds each record's logic tree from its attached
    constituency trees; ``raw`` mode tokenizes the record text directly.
    """
    if mode not in ("tree", "raw"):
        raise ValueError(f"mode must be 'tree' or 'raw', got '{mode}'")
    if not corpus:
        raise ValueError("empty corpus")
    hits: dict[str, dict[RelationType, int]] = {}
    counts: dict[str, int] = {}
    for record in corpus:
        if mode == "tree":
            if not record.trees:
                raise ValueError(f"record '{record.id}' has no parsed trees")
            present = relation_presence(build_logic_tree(list(record.trees), taxonomy))
        else:
            present = raw_relation_presence(word_tokenize(record.text), taxonomy)
        counts[record.label] = counts.get(record.label, 0) + 1
        per_class = hits.setdefault(record.label, {rel: 0 for rel in RelationType})
        for relation in present:
            per_class[relation] += 1
    ratios = {
        label: {
            rel: 100.0 * per_class[rel] / counts[label] for rel in RelationType
        }
        for label, per_class in hits.items()
    }
    return RelationPresenceTable(ratios=ratios, counts=counts, mode=mode)
