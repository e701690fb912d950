"""Bracketed constituency trees: parsing, token spans, traversal.

Trees arrive in the one-tree-per-line Penn-style bracketed format that
constituency parsers emit. Leaf tokens carry PTB bracket escapes
(``-LRB-`` and friends), which are decoded on parse and re-encoded on
render so the round trip is exact.
"""

from __future__ import annotations

from collections import deque
from pathlib import Path
from typing import Iterator, Optional, Sequence


class TreeParseError(ValueError):
    """Malformed bracketed tree; carries the character offset of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


_ESCAPES = {
    "-LRB-": "(",
    "-RRB-": ")",
    "-LSB-": "[",
    "-RSB-": "]",
    "-LCB-": "{",
    "-RCB-": "}",
}
_UNESCAPES = {v: k for k, v in _ESCAPES.items()}


class ConTree:
    """Constituency tree node.

    A node is either a leaf (``token`` set, no children) or internal
    (children set, no token). ``span`` is the half-open token interval the
    node covers; leaves have width 1 and spans are assigned left to right
    from 0 at parse time.
    """

    __slots__ = ("label", "children", "token", "span", "parent")

    def __init__(
        self,
        label: str,
        children: Sequence["ConTree"] = (),
        token: Optional[str] = None,
        span: tuple[int, int] = (0, 0),
    ):
        self.label = label
        self.children: tuple[ConTree, ...] = tuple(children)
        self.token = token
        self.span = span
        self.parent: Optional[ConTree] = None

    @property
    def is_leaf(self) -> bool:
        return self.token is not None

    def __repr__(self) -> str:
        if self.is_leaf:
            return f"ConTree({self.label} {self.token!r} @{self.span})"
        return f"ConTree({self.label} {len(self.children)} children @{self.span})"


def parse_bracketed(text: str) -> ConTree:
    """Parse one bracketed tree expression into a ConTree with spans."""
    tokens = _lex(text)
    if not tokens:
        raise TreeParseError("empty input", 0)
    pos = 0
    leaf_counter = [0]

    def parse_node() -> ConTree:
        nonlocal pos
        kind, value, offset = tokens[pos]
        if kind != "(":
            raise TreeParseError("expected '('", offset)
        pos += 1
        if pos >= len(tokens):
            raise TreeParseError("unbalanced brackets: unexpected end of input", len(text))
        kind, value, offset = tokens[pos]
        if kind != "atom":
            raise TreeParseError("expected node label", offset)
        label = value
        pos += 1
        children: list[ConTree] = []
        token: Optional[str] = None
        while True:
            if pos >= len(tokens):
                raise TreeParseError(
                    "unbalanced brackets: unexpected end of input", len(text)
                )
            kind, value, offset = tokens[pos]
            if kind == ")":
                pos += 1
                break
            if kind == "(":
                if token is not None:
                    raise TreeParseError("node mixes a token with subtrees", offset)
                children.append(parse_node())
            else:  # atom
                if children:
                    raise TreeParseError("node mixes a token with subtrees", offset)
                if token is not None:
                    raise TreeParseError("leaf has more than one token", offset)
                token = _ESCAPES.get(value, value)
                pos += 1
        if token is not None:
            start = leaf_counter[0]
            leaf_counter[0] += 1
            return ConTree(label, token=token, span=(start, start + 1))
        if not children:
            raise TreeParseError("internal node with zero children", offset)
        node = ConTree(
            label, children=children, span=(children[0].span[0], children[-1].span[1])
        )
        for child in children:
            child.parent = node
        return node

    root = parse_node()
    if pos != len(tokens):
        raise TreeParseError("trailing content after tree", tokens[pos][2])
    return root


def _lex(text: str) -> list[tuple[str, str, int]]:
    out: list[tuple[str, str, int]] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            out.append((ch, ch, i))
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()":
                j += 1
            out.append(("atom", text[i:j], i))
            i = j
    return out


def render_bracketed(node: ConTree) -> str:
    """Inverse of parse_bracketed (tokens re-escaped)."""
    if node.is_leaf:
        token = node.token or ""
        return f"({node.label} {_UNESCAPES.get(token, token)})"
    inner = " ".join(render_bracketed(child) for child in node.children)
    return f"({node.label} {inner})"


def leaf_text(node: ConTree) -> list[str]:
    """Tokens covered by ``node``, in order."""
    out: list[str] = []
    stack = [node]
    while stack:
        current = stack.pop()
        if current.is_leaf:
            out.append(current.token or "")
        else:
            stack.extend(reversed(current.children))
    return out


def level_order(
    node: ConTree, within: Optional[tuple[int, int]] = None
) -> Iterator[ConTree]:
    """Breadth-first traversal, ties at a depth broken left to right.

    When ``within`` is given, only nodes whose span lies fully inside it are
    yielded; descendants of excluded nodes are still visited, since a node
    wider than the window can contain nodes inside it.
    """
    queue: deque[ConTree] = deque([node])
    while queue:
        current = queue.popleft()
        if within is None or (
            within[0] <= current.span[0] and current.span[1] <= within[1]
        ):
            yield current
        queue.extend(current.children)


def offset_spans(node: ConTree, delta: int) -> None:
    """Shift every span in the tree by ``delta`` tokens (in place)."""
    if delta == 0:
        return
    stack = [node]
    while stack:
        current = stack.pop()
        current.span = (current.span[0] + delta, current.span[1] + delta)
        stack.extend(current.children)


def iter_tree_lines(path: str | Path) -> Iterator[tuple[int, str]]:
    """Yield (lineno, line) for tree lines, skipping blanks and # comments."""
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            yield lineno, line


def read_grouped_trees(path: str | Path) -> dict[str, list[str]]:
    """Read a trees file keyed by record id.

    Group markers are comment lines of the form ``# id: <record-id>``; the
    tree lines that follow belong to that record. Returns raw tree strings so
    callers control parse-error handling per line.
    """
    groups: dict[str, list[str]] = {}
    current: Optional[str] = None
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if body.lower().startswith("id:"):
                    current = body[3:].strip()
                    if not current:
                        raise ValueError(f"{path}:{lineno}: empty record id")
                    if current in groups:
                        raise ValueError(f"{path}:{lineno}: duplicate id '{current}'")
                    groups[current] = []
                continue
            if current is None:
                raise ValueError(f"{path}:{lineno}: tree line before any '# id:' marker")
            groups[current].append(line)
    return groups
