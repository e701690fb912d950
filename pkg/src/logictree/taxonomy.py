"""Connective taxonomy: ten logical relations and their trigger phrases.

The built-in taxonomy ships as a data file; callers may substitute their own
file to extend the connective set. Matching is case-insensitive over
whitespace-tokenized text, longest phrase first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import NamedTuple, Optional, Sequence


class TaxonomyError(ValueError):
    """Raised when a taxonomy file is malformed or inconsistent."""


class RelationType(str, enum.Enum):
    """The ten logical relations a connective can signal."""

    CONJUNCTION = "conjunction"
    ALTERNATIVE = "alternative"
    RESTATEMENT = "restatement"
    INSTANTIATION = "instantiation"
    CONTRAST = "contrast"
    CONCESSION = "concession"
    ANALOGY = "analogy"
    TEMPORAL = "temporal"
    CONDITION = "condition"
    CAUSAL = "causal"

    def __str__(self) -> str:  # noqa: D105 - keep the bare name in output
        return self.value


MAX_PHRASE_TOKENS = 5


class Match(NamedTuple):
    relation: RelationType
    phrase: str
    length: int


@dataclass(frozen=True)
class Taxonomy:
    """Immutable mapping from relation to its connective phrases.

    ``entries`` holds phrases as lowercase token tuples. A reverse index is
    built once so phrase lookup during matching is a dict probe.
    """

    entries: dict[RelationType, frozenset[tuple[str, ...]]]
    _by_phrase: dict[tuple[str, ...], RelationType] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )
    _max_len: int = field(init=False, repr=False, compare=False, default=1)

    def __post_init__(self) -> None:
        by_phrase: dict[tuple[str, ...], RelationType] = {}
        max_len = 1
        for relation, phrases in self.entries.items():
            for phrase in phrases:
                if not phrase:
                    raise TaxonomyError(f"empty phrase under relation '{relation}'")
                if len(phrase) > MAX_PHRASE_TOKENS:
                    raise TaxonomyError(
                        f"phrase '{' '.join(phrase)}' exceeds {MAX_PHRASE_TOKENS} tokens"
                    )
                for token in phrase:
                    if not token or any(ch.isspace() for ch in token):
                        raise TaxonomyError(
                            f"bad token {token!r} in phrase under '{relation}'"
                        )
                previous = by_phrase.get(phrase)
                if previous is not None and previous is not relation:
                    raise TaxonomyError(
                        f"phrase '{' '.join(phrase)}' assigned to both "
                        f"'{previous}' and '{relation}'"
                    )
                by_phrase[phrase] = relation
                max_len = max(max_len, len(phrase))
        object.__setattr__(self, "_by_phrase", by_phrase)
        object.__setattr__(self, "_max_len", max_len)

    @property
    def max_phrase_len(self) -> int:
        return self._max_len

    def relation_of(self, phrase_tokens: Sequence[str]) -> Optional[RelationType]:
        """Relation for an exact lowercase token sequence, if any."""
        return self._by_phrase.get(tuple(phrase_tokens))

    def phrases(self, relation: RelationType) -> frozenset[tuple[str, ...]]:
        return self.entries[relation]

    def all_phrases(self) -> list[tuple[RelationType, tuple[str, ...]]]:
        return [(rel, phrase) for phrase, rel in self._by_phrase.items()]


def parse_taxonomy_text(text: str) -> Taxonomy:
    """Parse the taxonomy file format.

    One line per relation: ``<relation>: phrase | phrase | ...``. Blank lines
    and ``#`` comments are ignored. Unknown relation names and phrases
    assigned to two relations are errors.
    """
    entries: dict[RelationType, set[tuple[str, ...]]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, body = line.partition(":")
        if not sep:
            raise TaxonomyError(f"line {lineno}: expected '<relation>: phrases'")
        try:
            relation = RelationType(name.strip().lower())
        except ValueError:
            raise TaxonomyError(
                f"line {lineno}: unknown relation name '{name.strip()}'"
            ) from None
        phrases = entries.setdefault(relation, set())
        for chunk in body.split("|"):
            tokens = tuple(chunk.lower().split())
            if tokens:
                phrases.add(tokens)
    frozen = {rel: frozenset(phrases) for rel, phrases in entries.items()}
    return Taxonomy(entries=frozen)


def load_taxonomy(source: Optional[str | Path] = None) -> Taxonomy:
    """Load a taxonomy from ``source``, or the built-in one when omitted."""
    if source is None:
        text = (
            resources.files("logictree").joinpath("data/taxonomy.txt").read_text("utf-8")
        )
    else:
        text = Path(source).read_text("utf-8")
    return parse_taxonomy_text(text)


def longest_match(
    tokens: Sequence[str], start: int, taxonomy: Taxonomy
) -> Optional[Match]:
    """Longest taxonomy phrase matching ``tokens[start:]``, if any.

    Tokens are compared lowercased. Returns the relation, the matched phrase
    as a space-joined string, and its token length. Absence of a match is a
    normal result.
    """
    if not 0 <= start < len(tokens):
        raise ValueError(f"start {start} out of range for {len(tokens)} tokens")
    limit = min(taxonomy.max_phrase_len, len(tokens) - start)
    for length in range(limit, 0, -1):
        candidate = tuple(t.lower() for t in tokens[start : start + length])
        relation = taxonomy.relation_of(candidate)
        if relation is not None:
            return Match(relation, " ".join(candidate), length)
    return None
