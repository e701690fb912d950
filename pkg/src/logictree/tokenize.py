"""Whitespace-plus-clitics word tokenizer for raw text.

Used where no parse is available (raw-mode statistics, fixtures). Splits
surrounding punctuation into separate tokens and detaches the common English
clitics so "don't" becomes ["do", "n't"], matching the taxonomy's "n't"
entry and the trees-file convention.
"""

from __future__ import annotations

import re

_CLITICS = ("n't", "'ll", "'re", "'ve", "'d", "'s", "'m")
_WORD_RE = re.compile(r"\w", re.UNICODE)


def _split_clitics(token: str) -> list[str]:
    lower = token.lower()
    for clitic in _CLITICS:
        if lower.endswith(clitic) and len(token) > len(clitic):
            head = token[: -len(clitic)]
            if _WORD_RE.search(head):
                return _split_clitics(head) + [token[-len(clitic):]]
    return [token]


def word_tokenize(text: str) -> list[str]:
    """Tokenize into words, clitics, and punctuation marks."""
    out: list[str] = []
    for chunk in text.split():
        # peel leading punctuation
        lead: list[str] = []
        while chunk and not _WORD_RE.search(chunk[0]) and chunk[0] != "'":
            lead.append(chunk[0])
            chunk = chunk[1:]
        # peel trailing punctuation (keep apostrophes attached for clitics)
        trail: list[str] = []
        while chunk and not _WORD_RE.search(chunk[-1]) and chunk[-1] != "'":
            trail.append(chunk[-1])
            chunk = chunk[:-1]
        trail.reverse()
        out.extend(lead)
        if chunk:
            out.extend(_split_clitics(chunk))
        out.extend(trail)
    return out
