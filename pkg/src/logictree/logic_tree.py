"""Logical structure tree construction.

Connective phrases found as whole constituency subtrees become internal
nodes of a binary tree; the text spans they relate become leaves. The search
walks the constituency tree breadth-first (top to bottom, left to right), so
the shallowest connective anchors the most global relation, and recurses
into the two extracted argument spans until no unconsumed connective
remains.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union

from .taxonomy import RelationType, Taxonomy
from .syntax import ConTree, leaf_text, level_order, offset_spans

# An argument region: ordered, disjoint half-open token intervals. Almost
# always a single interval; the grandparent-remainder rule can produce two.
SpanSet = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class MatchSite:
    """A constituency node whose leaf text equals a connective phrase."""

    relation: RelationType
    connective: str
    con_node: ConTree
    span: tuple[int, int]


@dataclass(frozen=True)
class Leaf:
    """Terminal argument: a trimmed token region and its text."""

    span: SpanSet
    text: str


@dataclass(frozen=True)
class Internal:
    """A connective node relating a left and right argument subtree."""

    relation: RelationType
    connective: str
    connective_span: tuple[int, int]
    span: SpanSet
    text: str
    left: "LogicTree"
    right: "LogicTree"


LogicTree = Union[Leaf, Internal]


@dataclass(frozen=True)
class BuildResult:
    """Construction output plus the trace needed for invariant audits."""

    tree: LogicTree
    tokens: tuple[str, ...]
    consumed: frozenset[tuple[int, int]]
    skipped: tuple[MatchSite, ...]


def is_punct_token(token: str) -> bool:
    """True for tokens made entirely of non-alphanumeric characters."""
    return bool(token) and all(not ch.isalnum() for ch in token)


def _trim_interval(
    tokens: Sequence[str], interval: tuple[int, int]
) -> Optional[tuple[int, int]]:
    start, end = interval
    while start < end and is_punct_token(tokens[start]):
        start += 1
    while end > start and is_punct_token(tokens[end - 1]):
        end -= 1
    return (start, end) if start < end else None


def trim_spanset(tokens: Sequence[str], spans: SpanSet) -> SpanSet:
    """Drop punctuation-only tokens at the edges of the region.

    Trimming works over the concatenated token sequence, so it eats through
    whole leading/trailing pieces when they are punctuation-only.
    """
    pieces = [list(piece) for piece in spans if piece[0] < piece[1]]
    # leading edge
    while pieces:
        start, end = pieces[0]
        while start < end and is_punct_token(tokens[start]):
            start += 1
        if start == end:
            pieces.pop(0)
        else:
            pieces[0] = [start, end]
            break
    # trailing edge
    while pieces:
        start, end = pieces[-1]
        while end > start and is_punct_token(tokens[end - 1]):
            end -= 1
        if start == end:
            pieces.pop()
        else:
            pieces[-1] = [start, end]
            break
    return tuple((start, end) for start, end in pieces)


def spanset_tokens(tokens: Sequence[str], spans: SpanSet) -> list[str]:
    out: list[str] = []
    for start, end in spans:
        out.extend(tokens[start:end])
    return out


def _contained(span: tuple[int, int], region: SpanSet) -> bool:
    # Constituency spans are contiguous, so containment in the union of
    # disjoint intervals means containment in one of them.
    return any(start <= span[0] and span[1] <= end for start, end in region)


def _overlaps(span: tuple[int, int], consumed: frozenset | set) -> bool:
    return any(span[0] < end and start < span[1] for start, end in consumed)


def combine_trees(trees: Sequence[ConTree]) -> ConTree:
    """Rebase per-sentence trees into one global token index space.

    Multiple trees are wrapped under a synthetic TOP root so cross-sentence
    connectives can reach the preceding sentence through the grandparent
    rule. Takes ownership of the input trees (spans are shifted in place).
    """
    if not trees:
        raise ValueError("no trees to combine")
    offset = 0
    for tree in trees:
        offset_spans(tree, offset - tree.span[0])
        offset = tree.span[1]
    if len(trees) == 1:
        return trees[0]
    root = ConTree("TOP", children=trees, span=(trees[0].span[0], trees[-1].span[1]))
    for tree in trees:
        tree.parent = root
    return root


def find_first_match(
    con_tree: ConTree,
    within: SpanSet,
    taxonomy: Taxonomy,
    consumed: frozenset | set = frozenset(),
) -> Optional[MatchSite]:
    """First unconsumed connective subtree in breadth-first order.

    Because an ancestor at the same leading position is always visited
    before its descendants, a node spanning a longer phrase ("even when")
    wins over the shorter phrase nested inside it ("when").
    """
    max_len = taxonomy.max_phrase_len
    for node in level_order(con_tree):
        span = node.span
        if span[1] - span[0] > max_len:
            continue
        if not _contained(span, within):
            continue
        if span in consumed or _overlaps(span, consumed):
            continue
        text = [t.lower() for t in leaf_text(node)]
        relation = taxonomy.relation_of(text)
        if relation is not None:
            return MatchSite(relation, " ".join(text), node, span)
    return None


def extract_arguments(
    con_tree: ConTree, site: MatchSite
) -> Optional[tuple[SpanSet, SpanSet]]:
    """Argument spans for a matched connective, or None if it cannot anchor.

    The parent is the nearest ancestor whose span strictly exceeds the
    connective span (unary chains are climbed through). Its remainder on
    each side of the connective is trimmed of punctuation before the form
    is classified, so a connective followed only by a period still counts
    as final and routes through the grandparent rule:

    - both sides non-empty: they are the two arguments;
    - connective-initial: the right argument is the trailing side, the left
      argument is the grandparent's span minus the parent's, in surface
      order;
    - connective-final: symmetric.
    """
    tokens = leaf_text(con_tree)
    w_start, w_end = site.span

    parent = site.con_node.parent
    while parent is not None and parent.span == site.span:
        parent = parent.parent
    if parent is None:
        return None

    alpha = _trim_interval(tokens, (parent.span[0], w_start))
    beta = _trim_interval(tokens, (w_end, parent.span[1]))

    if alpha is not None and beta is not None:
        return ((alpha,), (beta,))
    if alpha is None and beta is None:
        return None

    grand = parent.parent
    while grand is not None and grand.span == parent.span:
        grand = grand.parent
    if grand is None:
        return None
    remainder_raw: SpanSet = tuple(
        piece
        for piece in (
            (grand.span[0], parent.span[0]),
            (parent.span[1], grand.span[1]),
        )
        if piece[0] < piece[1]
    )
    remainder = trim_spanset(tokens, remainder_raw)
    if not remainder:
        return None

    if alpha is None:  # form: connective + beta
        return (remainder, ((beta[0], beta[1]),))
    return (((alpha[0], alpha[1]),), remainder)  # form: alpha + connective


def construct(trees: Sequence[ConTree], taxonomy: Taxonomy) -> BuildResult:
    """Build the logical structure tree for one statement.

    ``trees`` are the statement's per-sentence constituency trees; their
    spans are rebased into one global token space. Returns the tree plus the
    consumed connective spans and the match sites that failed argument
    extraction (consumed but absent from the tree).
    """
    root = combine_trees(list(trees))
    tokens = leaf_text(root)
    consumed: set[tuple[int, int]] = set()
    skipped: list[MatchSite] = []

    def build(region: SpanSet) -> LogicTree:
        while True:
            site = find_first_match(root, region, taxonomy, consumed)
            if site is None:
                trimmed = trim_spanset(tokens, region)
                return Leaf(trimmed, " ".join(spanset_tokens(tokens, trimmed)))
            consumed.add(site.span)
            args = extract_arguments(root, site)
            if args is None:
                skipped.append(site)
                continue
            left_region, right_region = args
            trimmed = trim_spanset(tokens, region)
            return Internal(
                relation=site.relation,
                connective=site.connective,
                connective_span=site.span,
                span=trimmed,
                text=" ".join(spanset_tokens(tokens, trimmed)),
                left=build(left_region),
                right=build(right_region),
            )

    tree = build(((0, len(tokens)),))
    return BuildResult(
        tree=tree,
        tokens=tuple(tokens),
        consumed=frozenset(consumed),
        skipped=tuple(skipped),
    )


def build_logic_tree(trees: Sequence[ConTree], taxonomy: Taxonomy) -> LogicTree:
    """Convenience wrapper around :func:`construct`."""
    return construct(trees, taxonomy).tree


def iter_nodes(tree: LogicTree) -> Iterator[tuple[LogicTree, int]]:
    """Yield (node, depth) over the logic tree, preorder."""
    stack: list[tuple[LogicTree, int]] = [(tree, 0)]
    while stack:
        node, depth = stack.pop()
        yield node, depth
        if isinstance(node, Internal):
            stack.append((node.right, depth + 1))
            stack.append((node.left, depth + 1))


def relation_counts(tree: LogicTree) -> dict[RelationType, int]:
    counts: dict[RelationType, int] = {}
    for node, _ in iter_nodes(tree):
        if isinstance(node, Internal):
            counts[node.relation] = counts.get(node.relation, 0) + 1
    return counts


def to_dict(tree: LogicTree) -> dict:
    """Serialize to the nested record form used by the CLI outputs."""
    if isinstance(tree, Leaf):
        return {"text": tree.text, "span": [list(piece) for piece in tree.span]}
    return {
        "relation": tree.relation.value,
        "connective": tree.connective,
        "connective_span": list(tree.connective_span),
        "span": [list(piece) for piece in tree.span],
        "text": tree.text,
        "left": to_dict(tree.left),
        "right": to_dict(tree.right),
    }


def from_dict(data: dict) -> LogicTree:
    if "relation" in data:
        return Internal(
            relation=RelationType(data["relation"]),
            connective=data["connective"],
            connective_span=tuple(data["connective_span"]),
            span=tuple(tuple(piece) for piece in data["span"]),
            text=data["text"],
            left=from_dict(data["left"]),
            right=from_dict(data["right"]),
        )
    return Leaf(
        span=tuple(tuple(piece) for piece in data["span"]),
        text=data["text"],
    )
