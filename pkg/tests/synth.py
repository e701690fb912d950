"""Synthetic statement generator for construction stress tests.

Composes taxonomy connective phrases with filler clauses into bracketed
constituency trees (and the matching raw text), covering coordination,
clause-initial subordination, and cross-sentence adverbials, nested to a
bounded depth. Fillers avoid taxonomy words so every connective occurrence
is intentional.
"""

from __future__ import annotations

import json
import random
from pathlib import Path

from logictree.syntax import leaf_text, parse_bracketed
from logictree.taxonomy import Taxonomy

CLAUSES = [
    "(S (NP (NNS dogs)) (VP (VBP bark)))",
    "(S (NP (NNS cats)) (VP (VBP meow)))",
    "(S (NP (NNS birds)) (VP (VBP sing)))",
    "(S (NP (NNS fish)) (VP (VBP swim)))",
    "(S (NP (NNS bears)) (VP (VBP sleep)))",
    "(S (NP (NNS owls)) (VP (VBP hoot)))",
    "(S (NP (DT the) (NN rain)) (VP (VBZ falls)))",
    "(S (NP (DT the) (NN sun)) (VP (VBZ shines)))",
    "(S (NP (NNS children)) (VP (VBP play)))",
    "(S (NP (NNS wolves)) (VP (VBP howl)))",
]

LABELS = ["Red Herring", "False Cause", "Hasty Generalization", "No Fallacy"]


def _connective_node(phrase: tuple[str, ...]) -> str:
    if len(phrase) == 1:
        return f"(CC {phrase[0]})"
    inner = " ".join(f"(XX {token})" for token in phrase)
    return f"(CONJP {inner})"


def _coordination(phrase: tuple[str, ...], left: str, right: str) -> str:
    return f"(S {left} {_connective_node(phrase)} {right})"


def _subordinate(phrase: tuple[str, ...], inner: str, outer: str) -> str:
    return f"(S (SBAR {_connective_node(phrase)} {inner}) (, ,) {outer})"


class StatementGenerator:
    def __init__(self, taxonomy: Taxonomy, seed: int = 0):
        self.rng = random.Random(seed)
        self.phrases = sorted(p for _, p in taxonomy.all_phrases())

    def _statement(self, budget: int) -> str:
        if budget <= 0 or self.rng.random() < 0.25:
            return self.rng.choice(CLAUSES)
        phrase = self.rng.choice(self.phrases)
        pattern = self.rng.random()
        left = self._statement(budget - 1)
        right = self._statement(budget - 1)
        if pattern < 0.6:
            return _coordination(phrase, left, right)
        return _subordinate(phrase, left, right)

    def record(self, index: int) -> dict:
        """One synthetic record: id, text, label, split, tree lines."""
        trees = [f"(ROOT {self._statement(self.rng.randint(0, 3))} (. .))"]
        if self.rng.random() < 0.3:  # cross-sentence adverbial opener
            phrase = self.rng.choice(self.phrases)
            clause = self.rng.choice(CLAUSES)
            trees.append(
                f"(ROOT (S (ADVP {_connective_node(phrase)}) (, ,) {clause} (. .)))"
            )
        tokens: list[str] = []
        for tree in trees:
            tokens.extend(leaf_text(parse_bracketed(tree)))
        return {
            "id": f"synth-{index:04d}",
            "text": " ".join(tokens),
            "label": self.rng.choice(LABELS),
            "split": "dev",
            "trees": trees,
        }

    def corpus(self, size: int) -> list[dict]:
        return [self.record(i) for i in range(size)]


def write_corpus_files(records: list[dict], corpus_path: Path, trees_path: Path) -> None:
    with open(corpus_path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(
                json.dumps(
                    {
                        "id": record["id"],
                        "text": record["text"],
                        "label": record["label"],
                        "split": record["split"],
                    }
                )
                + "\n"
            )
    with open(trees_path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(f"# id: {record['id']}\n")
            for tree in record["trees"]:
                handle.write(tree + "\n")
